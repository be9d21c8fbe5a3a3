//! Arithmetic in GF(p^m) and in the polynomial ring over it.

mod field;
mod irreducible;
pub mod numtheory;
mod poly;

pub use field::{FieldElement, FieldSpec, MAX_FIELD_SIZE};
pub use irreducible::{enumerate_irreducibles, poly_factor, poly_is_irreducible, poly_order};
pub use poly::Poly;

/// Builds GF(p^m), optionally with an explicit modulus (ascending
/// coefficients over F_p).
pub fn field_make(p: u32, m: u32, modulus: Option<&[u32]>) -> crate::Result<FieldSpec> {
    FieldSpec::new(p, m, modulus)
}

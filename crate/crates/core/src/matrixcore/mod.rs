//! Exact matrix algebra over GF(q): echelon forms, companion matrices,
//! Smith normal form over GF(q)[x] and rational canonical forms.

mod mat;
mod rcf;
mod smith;

pub use mat::{block_diag, companion, Mat, RrefResult};
pub use rcf::{char_poly, elementary_divisors, mat_conjugate_test, min_poly, rcf, ElementaryDivisor, RcfData};
pub use smith::{smith_invariant_factors, PolyMat};

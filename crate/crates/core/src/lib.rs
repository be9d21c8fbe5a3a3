//! Cyclic orbit codes in the Grassmannian over finite fields.
//!
//! The crate covers exact arithmetic in GF(q) and GF(q)[x], rational
//! canonical forms, conjugacy classes of cyclic subgroups of GL_n(F_q),
//! orbit-code construction with brute-force distance computation, and the
//! block-structure distance bounds for codes generated by matrices in
//! rational canonical form.

pub mod algebra;
pub mod cli;
pub mod codes;
mod error;
pub mod groups;
pub mod matrixcore;
pub mod text;
pub mod verify;
pub mod worked;

pub use error::{Error, Result};

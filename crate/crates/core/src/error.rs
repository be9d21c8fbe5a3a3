use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus must be monic of degree {0}")]
    BadModulus(usize),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("element code {code} out of range for field of size {q}")]
    ElementOutOfRange { code: u32, q: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must have positive degree")]
    ConstantPolynomial,
    #[error("polynomial order is undefined for a zero constant term")]
    ZeroConstantTerm,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular (not in GL_n)")]
    Singular,
    #[error("power {power} is not coprime to the group order {order}")]
    NotCoprime { power: u64, order: u64 },
    #[error("group closure exceeded the cap of {0} elements")]
    ClosureCapExceeded(usize),
    #[error("the zero subspace is not a point of the Grassmannian")]
    ZeroSubspace,
    #[error("minimum distance is undefined for a code with a single codeword")]
    SingletonCode,
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("resource guard: {0}")]
    ResourceLimit(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

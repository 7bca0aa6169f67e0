use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrimeModulus(u64),
    #[error("modulus polynomial {0:?} is reducible over GF(p)")]
    ReducibleModulusPolynomial(Vec<u64>),
    #[error("field of order {0} is too large for table arithmetic (limit 256)")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("budget exceeded: {what} needs {needed}, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u64,
    },
    #[error("ambient dimension mismatch ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("antisymmetry violated at basis pair ({i}, {j})")]
    AntisymmetryViolation { i: usize, j: usize },
    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    JacobiViolation { i: usize, j: usize, k: usize },
    #[error("element does not belong to this algebra (length {got}, dimension {expected})")]
    AlgebraMismatch { expected: usize, got: usize },
    #[error("algebras are defined over different fields")]
    FieldMismatch,
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("subspace is not a subalgebra")]
    NotASubalgebra,
    #[error("isomorphism search limited to dimension {max}, got {dim}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),
    #[error("m = {m} is not admissible in characteristic {p}")]
    InadmissibleM { m: usize, p: u64 },
    #[error("gamma constraint violated: {0}")]
    GammaConstraintViolation(String),
    #[error("index {index} out of range {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

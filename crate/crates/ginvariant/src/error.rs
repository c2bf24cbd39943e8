use thiserror::Error;

/// Crate-wide error type.
///
/// The first group are domain errors (rejected input or an exhausted search
/// cap) and map to exit code 2 in the CLI; the rest indicate an internal
/// invariant violation — a bug — and map to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("d must be a positive integer (got {0})")]
    NonPositive(i64),
    #[error("d must be square-free: {p}^2 divides {d}")]
    NotSquareFree { d: i64, p: i64 },
    #[error("no prime represented by ({a} {b} {c}) below cap {cap}; raise --search-cap")]
    CapExceeded { a: i64, b: i64, c: i64, cap: i64 },
    #[error("-{d} is not a quadratic residue mod {p}")]
    NonResidue { d: i64, p: i64 },
    #[error("prime {p} is inert in Q(sqrt(-{d}))")]
    InertPrime { p: i64, d: i64 },

    #[error("expected {num} to be divisible by {den}")]
    InexactDivision { num: i64, den: i64 },
    #[error("form ({a} {b} {c}) is not positive definite")]
    NotPositiveDefinite { a: i64, b: i64, c: i64 },
    #[error("support bounds differ: {left} vs {right}")]
    BoundMismatch { left: usize, right: usize },
    #[error("norm {norm} of {a}+{b}w is not divisible by {p}")]
    InexactQuotient { a: i64, b: i64, norm: i64, p: i64 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonPositive(_)
            | Error::NotSquareFree { .. }
            | Error::CapExceeded { .. }
            | Error::NonResidue { .. }
            | Error::InertPrime { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors raised by every backend. Validation errors point at bad input;
/// internal errors mean two independent computations disagreed.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parameter violation: {0}")]
    Parameter(String),
    #[error("{what} exceeds the configured limit of {limit}")]
    TooLarge { what: String, limit: usize },
    #[error("quiver is not of Dynkin type: {0}")]
    NonDynkin(String),
    #[error("quiver has an oriented cycle")]
    Cyclic,
    #[error("path basis exceeds {limit} paths; algebra is not finite-dimensional within the bound")]
    InfiniteDimensional { limit: usize },
    #[error("ray {index} is not primitive")]
    NotPrimitive { index: usize },
    #[error("rays {i} and {j} do not span a smooth cone (det = {det})")]
    NotSmooth { i: usize, j: usize, det: i64 },
    #[error("rays do not wind exactly once around the origin")]
    NotComplete,
    #[error("hom window [{lo}, {hi}] does not cover the support [{need_lo}, {need_hi}]")]
    WindowTooSmall { lo: i32, hi: i32, need_lo: i32, need_hi: i32 },
    #[error("differentials do not square to zero at degree {degree}")]
    NotAComplex { degree: i32 },
    #[error("matrix shapes do not match: {0}")]
    Shape(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("cohomology bounding box could not be certified within {cap}")]
    CertificationFailure { cap: i64 },
    #[error("exceptionality fails for the pair ({0}, {1})")]
    ExceptionalityFailure(usize, usize),
}

impl Error {
    /// True for errors signalling a bug or a disagreement between two
    /// computations, as opposed to rejected input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Inconsistency(_)
                | Error::CertificationFailure { .. }
                | Error::ExceptionalityFailure(..)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

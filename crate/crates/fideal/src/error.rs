use std::fmt;

/// Errors returned by library operations.
///
/// The variants mirror the failure taxonomy used by every operation:
/// `StructurallyImpossible` is deliberately distinct from a plain `false`
/// answer (an odd slice size can never satisfy the half-slice generator
/// count, so there is nothing to test), and `ConstructionFailed` is raised
/// by constructors whose self-verification gate rejected the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter violates an operation precondition.
    InvalidArgument(String),
    /// The question cannot be posed for these parameters (odd binomial).
    StructurallyImpossible(String),
    /// A constructor produced output that failed its verification gate.
    ConstructionFailed(String),
    /// The ideal is outside the supported class (empty, or a generator of
    /// degree below 2).
    UnsupportedIdeal(String),
    /// The requested computation exceeds the configured budget.
    TooLarge(String),
    /// A closed-form bound is undefined for these parameters.
    UndefinedBound(String),
}

impl Error {
    /// Short machine-readable tag, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::StructurallyImpossible(_) => "structurally-impossible",
            Error::ConstructionFailed(_) => "construction-failed",
            Error::UnsupportedIdeal(_) => "unsupported-ideal",
            Error::TooLarge(_) => "too-large",
            Error::UndefinedBound(_) => "undefined-bound",
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            Error::InvalidArgument(m)
            | Error::StructurallyImpossible(m)
            | Error::ConstructionFailed(m)
            | Error::UnsupportedIdeal(m)
            | Error::TooLarge(m)
            | Error::UndefinedBound(m) => m,
        };
        write!(f, "{}: {}", self.kind(), msg)
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

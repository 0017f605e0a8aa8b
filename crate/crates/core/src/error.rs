use alloc::string::String;
use core::fmt;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    NotAnIdeal,
    NotGraded,
    InvalidAlgebra(String),
    StepTooLarge { step: usize, max: usize },
    NonPolynomialExpansion,
    ConstraintViolated(String),
    SampleBudgetTooSmall { given: u64, min: u64 },
    QuadratureFailure(String),
    PoleAlpha { alpha: f64, pole: f64 },
    UnsupportedRange(String),
    FitFailure(String),
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotAnIdeal => write!(f, "subspace is not an ideal"),
            Error::NotGraded => write!(f, "operation requires a graded algebra"),
            Error::InvalidAlgebra(m) => write!(f, "invalid Lie algebra: {m}"),
            Error::StepTooLarge { step, max } => {
                write!(f, "nilpotency step {step} exceeds the supported bound {max}")
            }
            Error::NonPolynomialExpansion => {
                write!(f, "frame expansion does not have polynomial coefficients")
            }
            Error::ConstraintViolated(m) => write!(f, "constraint violated: {m}"),
            Error::SampleBudgetTooSmall { given, min } => {
                write!(f, "sample budget {given} below minimum {min}")
            }
            Error::QuadratureFailure(m) => write!(f, "quadrature failure: {m}"),
            Error::PoleAlpha { alpha, pole } => {
                write!(f, "alpha = {alpha} is too close to the pole {pole}")
            }
            Error::UnsupportedRange(m) => write!(f, "unsupported parameter range: {m}"),
            Error::FitFailure(m) => write!(f, "fit failure: {m}"),
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

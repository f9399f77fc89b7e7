use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vector contained a NaN or infinite entry.
    InvalidInput(String),
    /// A direction vector was zero (or numerically indistinguishable from zero).
    DegenerateDirection,
    /// Vectors of different ambient dimensions were mixed.
    DimensionMismatch { expected: usize, got: usize },
    /// A configuration with k = l = 0 was supplied.
    EmptyConfiguration,
    /// An exact (rational) computation was requested on data that is not
    /// available in rational form.
    NotRational,
    /// Two configuration points are closer than the required separation.
    DistinctnessViolation { distance: f64, min_required: f64 },
    /// A parameter was outside its documented range.
    InvalidParameter(String),
    /// A point fell outside the domain of a sampled map.
    OutOfDomain(String),
    /// The incidence function was identically zero.
    ZeroFunction,
    /// The supplied hyperplane is not tangent at the supplied point.
    NotATangency,
    /// The curvature component along the hyperplane normal vanishes.
    DegenerateCurvature,
    /// A point to project coincides with the projection center's horizon.
    ProjectionSingularity,
    /// A projection step failed validation and should be retried.
    StepRejected { margin: f64 },
    /// All retries for a projection step were exhausted.
    ReductionFailed { step: usize, retries: usize, last_margin: f64 },
    /// Malformed CSV input.
    Csv(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Self::DegenerateDirection => write!(f, "direction vector is zero"),
            Self::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Self::EmptyConfiguration => write!(f, "configuration has k = l = 0"),
            Self::NotRational => write!(f, "exact arithmetic unavailable for this input"),
            Self::DistinctnessViolation { distance, min_required } => write!(
                f,
                "configuration points too close: distance {distance} < {min_required}"
            ),
            Self::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
            Self::OutOfDomain(msg) => write!(f, "point outside sampled domain: {msg}"),
            Self::ZeroFunction => write!(f, "incidence function is identically zero"),
            Self::NotATangency => write!(f, "hyperplane is not tangent at the given point"),
            Self::DegenerateCurvature => {
                write!(f, "curvature component along the normal vanishes")
            }
            Self::ProjectionSingularity => {
                write!(f, "sample point on the projection center's horizon")
            }
            Self::StepRejected { margin } => {
                write!(f, "projection step rejected: validation margin {margin}")
            }
            Self::ReductionFailed { step, retries, last_margin } => write!(
                f,
                "reduction failed at step {step} after {retries} retries (last margin {last_margin})"
            ),
            Self::Csv(msg) => write!(f, "csv: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

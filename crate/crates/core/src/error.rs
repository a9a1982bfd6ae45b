use thiserror::Error;

/// Errors raised by the geometry toolkit.
///
/// Variants carrying a `stage` string identify where a multi-step pipeline stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("size {size} exceeds budget {budget} ({what})")]
    SizeExceeded {
        what: &'static str,
        size: u128,
        budget: u128,
    },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degenerate pair: the two points coincide")]
    DegeneratePair,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("point is not on the hypersurface")]
    PointNotOnX,
    #[error("points are not on the hypersurface")]
    PointsNotOnX,
    #[error("characteristic 2 is not supported for this operation")]
    CharTwoUnsupported,
    #[error("line is contained in the hypersurface")]
    LineContainedInX,
    #[error("point is singular")]
    SingularPoint,
    #[error("tangent involution is undefined at its base point")]
    UndefinedAtBasePoint,
    #[error("point is not an ordinary double point")]
    NotOrdinaryDoublePoint,
    #[error("not found (stage: {stage})")]
    NotFound { stage: String },
    #[error("hypothesis {hypothesis} failed at step {step}")]
    HypothesisFailure { hypothesis: String, step: String },
    #[error("no usable auxiliary point")]
    NoAuxiliaryPoint,
    #[error("degenerate section: elimination dropped below degree 3")]
    DegenerateSection,
    #[error("multiple root at residue level")]
    MultipleRoot,
    #[error("reduction at the place is the zero form")]
    DegenerateReduction,
    #[error("place {0} in J-data has bad reduction")]
    BadPlaceInJData(String),
    #[error("section is fixed by Frobenius")]
    ConjugateFixed,
    #[error("line through the conjugate sections lies in the fibers")]
    LineInFibers,
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn not_found(stage: impl Into<String>) -> Self {
        Error::NotFound {
            stage: stage.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn mismatch(msg: impl Into<String>) -> Self {
        Error::FieldMismatch(msg.into())
    }

    pub fn hypothesis(hypothesis: impl Into<String>, step: impl Into<String>) -> Self {
        Error::HypothesisFailure {
            hypothesis: hypothesis.into(),
            step: step.into(),
        }
    }

    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

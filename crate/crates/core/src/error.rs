use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("both polynomials are constant in {0}")]
    ConstantInVariable(&'static str),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("eliminated ideal is not principal ({0} generators)")]
    NotPrincipal(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("singular linear part")]
    SingularLinearPart,
    #[error("map is not quadratic: {0}")]
    NotQuadratic(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("degree samples disagree: {0:?}")]
    DegreeSamplesDisagree(Vec<String>),
    #[error("no orbit matches invariant vector {0}")]
    Unclassifiable(String),
    #[error("unknown orbit label {0}")]
    UnknownLabel(String),
    #[error("label {0} has no witness route")]
    UnsupportedLabel(String),
    #[error("approximate witness residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualExceeded { residual: f64, tolerance: f64 },
    #[error("invalid field for this operation: {0}")]
    FieldMismatch(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

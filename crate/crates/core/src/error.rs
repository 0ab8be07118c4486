use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TwistError {
    #[error("index {index} out of range for {what}")]
    IndexOutOfRange { what: &'static str, index: usize },

    #[error("unsupported fiber dimension {0}")]
    BadFiberDim(usize),

    #[error("fiber dimension mismatch: {left} vs {right}")]
    FiberMismatch { left: usize, right: usize },

    #[error("boost direction is not a unit vector (norm {0})")]
    NonUnitDirection(f64),

    #[error("Lorentz extraction left an imaginary residue of {0:e}")]
    NonRealLorentz(f64),

    #[error("operator lies outside the fluctuation family (residual {0:e})")]
    ExtractionResidual(f64),

    #[error("normal-form and probe comparisons disagree (normal form {normal:e}, probe {probe:e})")]
    EqualityPathsDisagree { normal: f64, probe: f64 },

    #[error("algebra element is not unitary (defect {0:e})")]
    NotUnitary(f64),

    #[error("operation requires a {expected} operator")]
    Linearity { expected: &'static str },

    #[error("geometry mismatch: expected {expected}, got {got}")]
    GeometryMismatch { expected: String, got: String },

    #[error("unsupported closed form {form} for geometry {geometry}")]
    UnsupportedClosedForm { form: String, geometry: String },

    #[error("unknown check group `{0}`")]
    UnknownGroup(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, TwistError>;

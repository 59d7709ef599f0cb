use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("derivative order {0} exceeds the supported maximum of 2")]
    OrderExceeded(usize),
    #[error("metric is not positive definite at {point:?}")]
    SingularMetric { point: Vec<f64> },
    #[error("dynamical two-form is degenerate at {point:?}")]
    SingularOmega { point: Vec<f64> },
    #[error("function is not quadratic in velocities (fit residual {residual:e})")]
    NotSpecialQuadratic { residual: f64 },
    #[error("quadratic part is not proportional to the metric (residual {residual:e})")]
    NotMetricProportional { residual: f64 },
    #[error("time component is not constant")]
    NonConstantTimeComponent,
    #[error("unit mismatch in `{field}`: expected {expected}, found {found}")]
    UnitMismatch { field: String, expected: String, found: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid model: {0}")]
    Model(String),
    #[error("non-finite state at t = {t}")]
    NonFinite { t: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

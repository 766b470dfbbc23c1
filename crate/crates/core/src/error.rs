use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix has unspecialized parameters; specialize parameters first")]
    Parametric,
    #[error("invalid GNLA: {0}")]
    Validation(String),
    #[error("not fundamental: {reason} (witness: {witness})")]
    NotFundamental { reason: String, witness: String },
    #[error("not deprolongable: {0}")]
    NotDeprolongable(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("defining function is not real: {0}")]
    Reality(String),
    #[error("not weighted homogeneous: {0}")]
    Homogeneity(String),
    #[error("not closed under bracket: [{pair}] has residual {residual}")]
    Closure { pair: String, residual: String },
    #[error("field {field} is not tangent: residual {residual}")]
    Tangency { field: String, residual: String },
    #[error("der0 on g-1 is {0}; normalization is not supported for this group")]
    UnsupportedDer0(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not a prime")]
    NotPrime(u64),

    #[error("division by zero in GF({q})")]
    DivisionByZero { q: u32 },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u32, right: u32 },

    #[error("linear system has no solution")]
    NoSolution,

    #[error("resource limit exceeded: {what} needs {required}, limit is {limit}")]
    ResourceLimit {
        what: &'static str,
        required: String,
        limit: String,
    },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("infeasible decoding matrix: {0}")]
    InfeasibleD(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn resource(what: &'static str, required: impl ToString, limit: impl ToString) -> Self {
        Error::ResourceLimit {
            what,
            required: required.to_string(),
            limit: limit.to_string(),
        }
    }
}

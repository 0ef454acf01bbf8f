use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("operands belong to different generator tables")]
    TableMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid generator table: {0}")]
    InvalidTable(String),

    #[error("constraints not second class: constraint bracket matrix is singular")]
    NotSecondClass,

    #[error("constraint bracket matrix has a Grassmann-valued entry at ({0}, {1})")]
    NonNumericConstraintBracket(usize, usize),

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("square-root argument non-positive on the {branch} branch (value {value:e})")]
    NonPositiveRadicand { branch: &'static str, value: f64 },

    #[error("operator is not Hermitian (relative defect {0:e})")]
    NotHermitian(f64),

    #[error("Fock cutoff {cutoff} is insufficient for the coherent amplitude; need N >= {required}")]
    InsufficientCutoff { cutoff: usize, required: usize },

    #[error("time grid must be strictly increasing")]
    TimeGrid,

    #[error("config error: {0}")]
    Config(String),

    #[error("malformed matrix data: {0}")]
    MatrixFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

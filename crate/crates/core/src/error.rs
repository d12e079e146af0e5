use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Weyl descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("element {0} does not belong to the group {1}")]
    NotInGroup(String, String),

    #[error("invalid type label: {0}")]
    InvalidType(String),

    #[error("invalid character label: {0}")]
    InvalidLabel(String),

    #[error("type {ty} is not self-opposite: longest element maps it to {image}")]
    NotSelfOpposite { ty: String, image: String },

    #[error("budget exceeded for {what}: need {required}, budget is {budget} (raise OPPG_BUDGET)")]
    BudgetExceeded {
        what: String,
        required: String,
        budget: u64,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("construction not applicable: {0}")]
    NotApplicable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

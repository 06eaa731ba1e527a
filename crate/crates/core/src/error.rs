use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("block-system parse error: {0}")]
    Parse(String),

    #[error("invalid block system at {entry}: {reason}")]
    InvalidEntry { entry: String, reason: String },

    #[error("coalgebra input error: {0}")]
    Coalgebra(String),

    #[error("non-split coradical; extend scalars ({0})")]
    NonSplit(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("level cap exceeded: N/r = {levels} exceeds the configured cap {cap}")]
    LevelCap { levels: u64, cap: u64 },

    #[error("search node cap of {cap} exceeded; raise the cap to obtain a verdict")]
    NodeCap { cap: u64 },

    #[error("oracle refuses: {0}")]
    OracleCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

use crate::game::Position;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cycle detected through position {0}")]
    CycleDetected(Position),

    #[error("reachable subgame exceeds the node cap of {cap}")]
    LimitExceeded { cap: usize },

    #[error("position {0} is not part of the graph")]
    UnknownPosition(Position),

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("unknown class predicate `{0}`")]
    UnknownPredicate(String),

    #[error("candidate set {0} is required for this target but was not supplied")]
    MissingSet(&'static str),

    #[error("label ({g},{g_minus}) is neither a swap nor a (k,k) label")]
    NotTameLabel { g: u32, g_minus: u32 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),

    #[error("invalid position {position}: {reason}")]
    InvalidPosition { position: Position, reason: String },

    #[error("fixture parse error at line {line}: {message}")]
    FixtureParse { line: usize, message: String },
}

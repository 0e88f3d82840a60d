use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown id `{0}`")]
    Lookup(String),
    #[error("composition error: {0}")]
    Composition(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("not a dg map: {0}")]
    NotDgMap(String),
    #[error("incomplete map: missing images for {0:?}")]
    IncompleteMap(Vec<String>),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("rank cap exceeded: {0}")]
    RankCap(String),
    #[error("structural error: {0}")]
    Structural(String),
    #[error("invalid ribbon graph: {0}")]
    InvalidRibbon(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

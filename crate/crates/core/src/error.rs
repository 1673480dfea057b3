use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rootsys: {0}")]
    RootSystem(String),
    #[error("rootsys: group too large (order exceeds enumeration bound {bound})")]
    GroupTooLarge { bound: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("repdata: {0}")]
    Rep(String),
    #[error("qser: {0}")]
    Series(String),
    #[error("blocks: {0}")]
    Label(String),
    #[error("abengine: {0}")]
    Engine(String),
    #[error("zhatref: {0}")]
    Plumbing(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

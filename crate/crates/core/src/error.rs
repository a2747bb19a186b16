use thiserror::Error;

use crate::report::AxiomReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("dangling id '{id}' in table {table}")]
    Dangling { table: String, id: String },
    #[error("unknown cell '{id}' in degree {degree}")]
    UnknownCell { degree: usize, id: String },
    #[error("degree {degree} is outside the truncation bound {dim}")]
    Truncation { degree: usize, dim: usize },
    #[error("simplicial identities fail:\n{0}")]
    NotSimplicial(AxiomReport),
    #[error("invalid poset: {0}")]
    InvalidPoset(String),
    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("invalid monoid presentation: {0}")]
    InvalidMonoid(String),
    #[error("invalid forest: {0}")]
    InvalidForest(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("uniqueness failure: {0}")]
    Uniqueness(String),
    #[error("not well founded: {0}")]
    NotWellFounded(String),
}

impl Error {
    pub fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }

    pub fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

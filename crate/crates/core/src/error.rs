use thiserror::Error;

use crate::model::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(ValidationReport),
    #[error("coverage target {m} exceeds the proposition universe of size {props}")]
    MOutOfRange { m: usize, props: usize },
    #[error("{props} propositions exceed the configured cap of {cap}")]
    ApCapExceeded { props: usize, cap: usize },
    #[error("player 2 vertex {0} does not have exactly one successor")]
    NotDeterministic(usize),
    #[error("model is not controllably recurrent: vertex {counterexample} cannot be brought back to the initial vertex")]
    NotRecurrent { counterexample: usize },
    #[error("no end component contains the initial vertex")]
    NoEndComponent,
    #[error("input graph has no edges")]
    EmptyEdgeSet,
    #[error("exhaustive search exceeded its budget of {limit} node expansions")]
    BudgetExceeded { limit: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

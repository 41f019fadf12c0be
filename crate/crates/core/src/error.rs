use thiserror::Error;

use crate::graph::Vertex;

/// Errors produced by the solvers, constructions and file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: Vertex, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The subproblem has no solution (e.g. an undeletable vertex must go).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A case of a case-analysis algorithm does not apply to this input.
    #[error("not applicable: {0}")]
    Inapplicable(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    Budget { what: &'static str, limit: u64 },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

use thiserror::Error;

use crate::netgraph::{EdgeId, NodeId};
use crate::planner::FeasibilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed network, demand, or file content.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown node {0}")]
    UnknownNode(NodeId),

    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),

    /// A flow handed to path decomposition does not conserve at some node.
    #[error("flow invariant violated: {0}")]
    FlowInvariant(String),

    /// The coloring state disagrees with its own path lists.
    #[error("coloring state corrupted: {0}")]
    InvariantCorruption(String),

    #[error("recoloring did not reach a fixpoint within {budget} steps")]
    Nontermination { budget: usize },

    /// A guarantee of the capacity theorem failed to materialize. Signals a
    /// bug or unmet preconditions.
    #[error("theorem guarantee violated: {0}")]
    TheoremViolation(String),

    #[error("demand is infeasible: {0}")]
    Infeasible(Box<FeasibilityReport>),

    #[error("residual network cannot carry the common messages: {0}")]
    InfeasibleResidual(String),

    #[error("coded subgraph contains a directed cycle through edge {0}")]
    CyclicCode(EdgeId),

    #[error("no decodable code found after {attempts} attempts (largest field GF(2^{field_bits}))")]
    CodeConstruction { attempts: usize, field_bits: u32 },

    #[error("division by zero in GF(2^{0})")]
    DivisionByZero(u32),

    #[error("plan does not match network: {0}")]
    PlanMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

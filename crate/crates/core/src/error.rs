use thiserror::Error;

use crate::distance::NegativeCycleWitness;
use crate::graph::VertexId;
use crate::report::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("the number of slopes must be at least 1, got {0}")]
    InvalidSlopes(u32),

    #[error("invalid level graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("invalid drawing: {0}")]
    InvalidDrawing(ValidationReport),

    #[error("invalid circulation: {0}")]
    InvalidCirculation(ValidationReport),

    #[error("no drawing exists (negative cycle of length {})", .0.total_length())]
    Infeasible(Box<NegativeCycleWitness>),

    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    #[error("vertex {0:?} is not reachable from the distance source")]
    Unreachable(VertexId),

    #[error("instance has {n} vertices, the oracle limit is {max}")]
    SizeGuard { n: usize, max: usize },

    #[error("simultaneous iteration exceeded its bound ({iterations} > {bound})")]
    IterationBound { iterations: u64, bound: u64 },
}

impl Error {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, Error::Infeasible(_))
    }

    pub fn witness(&self) -> Option<&NegativeCycleWitness> {
        match self {
            Error::Infeasible(w) => Some(w),
            _ => None,
        }
    }
}

use thiserror::Error;

use crate::plane_graph::{GraphError, Triangle, Vertex};
use crate::structure_detect::{PwordEmbedding, StructureError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("vertex {0} has a list with fewer than three colors")]
    ListTooSmall(Vertex),
    #[error("precolored vertex {0} gets color {1}, which is not in its list")]
    PrecolorNotInList(Vertex, u32),
    #[error("no island of size at most {sigma} found among {remaining} vertices")]
    IslandNotFound { sigma: usize, remaining: usize },
    #[error("sparsifiers {0:?} and {1:?} are not separated")]
    NotSeparated(Vec<Vertex>, Vec<Vertex>),
    #[error("no valid extension to sparsifier {0:?}")]
    NoValidExtension(Vec<Vertex>),
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error("input contains P''_t: {0:?}")]
    PwordPresent(PwordEmbedding),
    #[error("the disk of {0:?} is not a rooted planar 3-tree")]
    NotA3Tree(Triangle),
    #[error("face {0} has only precolored vertices")]
    AllIncidentVerticesPrecolored(usize),
    #[error("the outer face is not bounded by the triangle {0:?}")]
    OuterNotTriangle(Triangle),
    #[error("vertex {0} of the outer triangle is not precolored")]
    PrecoloringIncomplete(Vertex),
}

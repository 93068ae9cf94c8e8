//! Clustered 3-list-coloring of P''_t-free plane graphs.

pub mod cli_io;
pub mod color_core;
pub mod discharge_audit;
pub mod error;
pub mod extend_solver;
pub mod islands;
pub mod oracle;
pub mod plane_graph;
pub mod stacks;
pub mod structure_detect;

pub use error::SolveError;
pub use plane_graph::{Face, GraphError, PlaneGraph, Triangle, Vertex};

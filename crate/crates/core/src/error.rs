use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

/// Errors raised by the tour pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: EdgeId, vertex: VertexId },

    #[error("rotation system is not a spherical embedding: {faces} faces, expected {expected}")]
    NotSpherical { faces: usize, expected: usize },

    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),

    #[error("no proper 3-coloring of the faces exists (input is not a Barnette graph)")]
    NotFaceColorable,

    #[error("face {0} is not alternating for the cycle cover")]
    NotAlternating(usize),

    #[error("edge set is not a cycle cover: {0}")]
    NotCycleCover(String),

    #[error("invalid tour: {0}")]
    InvalidTour(String),

    #[error("reduction failed: {0}")]
    Reduction(String),

    #[error("no convex combination of 3-cut perfect matchings exists (is the graph cubic and 2-connected?)")]
    Infeasible,

    #[error("graph has {0} vertices; exact TSP oracle supports at most {max}", max = crate::oracle::HELD_KARP_MAX)]
    TooLarge(usize),

    #[error("operation invariant broken: {0}")]
    Invariant(String),

    #[error("generator: {0}")]
    Generator(String),

    #[error("plugin: {0}")]
    Plugin(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

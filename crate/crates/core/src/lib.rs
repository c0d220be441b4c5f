//! Short TSP tours on cubic graphs.
//!
//! Barnette graphs are handled by face alternation on three cycle covers;
//! 2-connected cubic graphs by reduction of chorded 6-cycles followed by
//! local merging of cycle covers drawn from an exact matching decomposition;
//! graphs with bridges by solving each 2-edge-connected piece and doubling
//! the bridges.

pub mod barnette;
pub mod cover;
pub mod cycles;
pub mod error;
pub mod general;
pub mod generate;
pub mod graph;
pub mod io;
mod lp;
pub mod matching;
pub mod oracle;
pub mod pipeline;
pub mod reduce;
pub mod tour;

pub type Rational = num::BigRational;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, VertexId};
pub use tour::Tour;

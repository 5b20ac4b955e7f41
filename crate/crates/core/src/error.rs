use thiserror::Error;

use crate::coloring::Color;
use crate::graph::{EdgeId, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {vertex} (edge {edge})")]
    SelfLoop { edge: EdgeId, vertex: VertexId },

    #[error("vertex {vertex} out of range for a graph on {n} vertices (edge {edge})")]
    VertexOutOfRange { edge: EdgeId, vertex: VertexId, n: usize },

    #[error("a multigraph needs at least one vertex")]
    NoVertices,

    #[error("{n} vertices exceed the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("header announces {expected} edges but {found} were given")]
    EdgeCountMismatch { expected: usize, found: usize },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("{what}: {actual} exceeds the desk-scale limit of {limit} (use --force to lift it)")]
    ScaleGuard { what: &'static str, limit: usize, actual: usize },

    #[error("palette size must be at least 1")]
    EmptyPalette,

    #[error("edge {0} does not exist")]
    UnknownEdge(EdgeId),

    #[error("edge {0} is already colored")]
    AlreadyColored(EdgeId),

    #[error("color {color} is outside the palette [1, {k}]")]
    ColorOutOfRange { color: Color, k: Color },

    #[error("coloring edge {edge} with {color} clashes with adjacent edge {conflict}")]
    Improper { edge: EdgeId, color: Color, conflict: EdgeId },

    #[error("coloring covers {found} edges but the graph has {expected}")]
    ColoringLength { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no connected sample after {attempts} attempts (seed {seed})")]
    SamplingFailed { attempts: usize, seed: u64 },

    #[error("no proper coloring found up to the upper bound {0}")]
    UpperBoundExceeded(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn is_scale_guard(&self) -> bool {
        matches!(self, Error::ScaleGuard { .. })
    }
}

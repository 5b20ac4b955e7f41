//! Multigraph edge-coloring laboratory.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`]: loop-free multigraphs with stable edge ids, statistics and the
//!   line-oriented instance format.
//! - [`density`]: exact multigraph density by subset enumeration.
//! - [`ordering`]: the max-back vertex ordering and the lexicographic edge
//!   ordering derived from it.
//! - [`coloring`]: partial colorings, free edges and vertices, cover values,
//!   the admissibility check and the conditional greedy driver.
//! - [`oracles`]: brute-force ground truth (chromatic index, naive
//!   admissibility, properness).
//! - [`harness`]: instance generators and the experiment driver.
//! - [`cli`]: the `edgecolor` command-line surface.

pub mod cli;
pub mod coloring;
pub mod density;
pub mod error;
pub mod graph;
pub mod harness;
pub mod oracles;
pub mod ordering;

pub use coloring::{
    check_admissible, conditional_greedy, cover_value, extend, free_vertices, is_free_edge,
    uncolored_inside, AdmissibilityViolation, Color, FreeVertexSemantics, Outcome,
    PartialColoring, Rejection, RunTrace, Step,
};
pub use density::{density, density_lower_bound_check, density_with, DensityOptions, DensityResult};
pub use error::{Error, Result};
pub use graph::{EdgeId, GraphStats, Multigraph, VertexId, VertexSet};
pub use oracles::{chromatic_index, naive_admissible, validate_coloring, OracleResult};
pub use ordering::{back_degree, reorder, reorder_with, EdgeOrder, TieBreak};

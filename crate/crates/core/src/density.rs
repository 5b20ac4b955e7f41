//! Exact multigraph density.
//!
//! `omega(G) = max ceil(e(S) / floor(|S| / 2))` over vertex subsets with
//! `|S| >= 2`. Only induced subgraphs are enumerated: dropping edges from a
//! subgraph never raises its ratio.
//!
//! For even `|S| >= 4` the ratio never beats the odd set obtained by removing a
//! vertex of minimum degree in `G[S]`, so with pruning on only pairs and odd
//! sets are evaluated. The minimum-size witness is therefore never an even set
//! of size four or more, and pruning does not change the reported witness.

use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSet};

/// Largest vertex count accepted without `force`.
pub const DENSITY_MAX_VERTICES: usize = 26;

#[derive(Clone, Copy, Debug)]
pub struct DensityOptions {
    /// Skip even subsets of size four or more.
    pub prune_even: bool,
    /// Lift the [`DENSITY_MAX_VERTICES`] guard.
    pub force: bool,
}

impl Default for DensityOptions {
    fn default() -> Self {
        DensityOptions { prune_even: true, force: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityResult {
    pub omega: usize,
    /// A maximising subset: smallest cardinality, then smallest bitmask.
    pub witness: VertexSet,
    /// `e(witness)`.
    pub witness_edges: usize,
    /// `max(Delta, omega)`.
    pub fractional_index: usize,
}

pub fn density(g: &Multigraph) -> Result<DensityResult> {
    density_with(g, DensityOptions::default())
}

pub fn density_with(g: &Multigraph, opts: DensityOptions) -> Result<DensityResult> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = g.n();
    if n > DENSITY_MAX_VERTICES && !opts.force {
        return Err(Error::ScaleGuard { what: "density vertex count", limit: DENSITY_MAX_VERTICES, actual: n });
    }

    // lower[v]: (u, multiplicity) for neighbours u < v
    let mut lower: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for v in 0..n {
        for u in g.neighbors(v).iter().filter(|&u| u < v) {
            lower[v].push((u, g.multiplicity(u, v)));
        }
    }

    let mut best = Best::default();
    let mut search = Search { lower: &lower, opts, best: &mut best };
    search.descend(0, VertexSet::empty(), 0);

    let witness = best.witness;
    Ok(DensityResult {
        omega: best.omega,
        witness,
        witness_edges: best.edges,
        fractional_index: best.omega.max(g.stats().max_degree),
    })
}

#[derive(Default)]
struct Best {
    omega: usize,
    witness: VertexSet,
    edges: usize,
}

impl Best {
    fn offer(&mut self, s: VertexSet, edges: usize) {
        let half = s.len() / 2;
        // e / half rounded up, integer only
        let value = edges.div_ceil(half);
        let better = value > self.omega
            || (value == self.omega
                && (self.witness.is_empty()
                    || s.len() < self.witness.len()
                    || (s.len() == self.witness.len() && s.bits() < self.witness.bits())));
        if better {
            self.omega = value;
            self.witness = s;
            self.edges = edges;
        }
    }
}

struct Search<'a> {
    lower: &'a [Vec<(usize, usize)>],
    opts: DensityOptions,
    best: &'a mut Best,
}

impl Search<'_> {
    /// Visits every superset of `s` that adds only vertices `>= next`.
    fn descend(&mut self, next: usize, s: VertexSet, edges: usize) {
        for v in next..self.lower.len() {
            let added: usize =
                self.lower[v].iter().filter(|(u, _)| s.contains(*u)).map(|(_, mult)| mult).sum();
            let t = s.with(v);
            let size = t.len();
            let edges_t = edges + added;
            if size >= 2 && (!self.opts.prune_even || size == 2 || size % 2 == 1) {
                self.best.offer(t, edges_t);
            }
            self.descend(v + 1, t, edges_t);
        }
    }
}

/// `omega(G) <= chi` holds for every proper `chi`-edge-coloring; the check is
/// used as a cross-oracle assertion.
pub fn density_lower_bound_check(g: &Multigraph, chi: usize) -> Result<bool> {
    Ok(density(g)?.omega <= chi)
}

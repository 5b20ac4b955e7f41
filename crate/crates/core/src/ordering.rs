//! Vertex and edge ordering used by the greedy driver.
//!
//! Vertices are placed one at a time: first a vertex of maximum degree, then
//! repeatedly the unplaced vertex with the most edges into the placed set.
//! Edges are then sorted by the positions of their endpoints, earlier
//! endpoint first.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{EdgeId, Multigraph, VertexId, VertexSet};

/// How ties left open by the placement rule are resolved.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Higher total degree, then lower vertex id; parallel edges by id.
    #[default]
    Deterministic,
    /// Uniformly random among tied vertices and among parallel edges, drawn
    /// from the given seed.
    Seeded(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    /// `vertex_order[i]` is the vertex placed at position `i`.
    pub vertex_order: Vec<VertexId>,
    /// `edge_order[i]` is the edge colored at step `i + 1`.
    pub edge_order: Vec<EdgeId>,
    /// Inverse of `edge_order`.
    pub rank: Vec<usize>,
}

impl EdgeOrder {
    /// Position of every vertex in `vertex_order`.
    pub fn vertex_positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.vertex_order.len()];
        for (i, &v) in self.vertex_order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Sort key of edge `e`: endpoint positions, smaller first.
    pub fn key(&self, g: &Multigraph, e: EdgeId) -> (usize, usize) {
        edge_key(&self.vertex_positions(), g, e)
    }
}

fn edge_key(pos: &[usize], g: &Multigraph, e: EdgeId) -> (usize, usize) {
    let (u, v) = g.endpoints(e);
    let (a, b) = (pos[u], pos[v]);
    (a.min(b), a.max(b))
}

/// Number of edges between `z` and the vertices of `placed`.
pub fn back_degree(g: &Multigraph, z: VertexId, placed: VertexSet) -> usize {
    g.incident(z)
        .iter()
        .filter(|&&e| {
            let (u, v) = g.endpoints(e);
            let other = if u == z { v } else { u };
            placed.contains(other)
        })
        .count()
}

pub fn reorder(g: &Multigraph) -> Result<EdgeOrder> {
    reorder_with(g, TieBreak::Deterministic)
}

pub fn reorder_with(g: &Multigraph, tie: TieBreak) -> Result<EdgeOrder> {
    g.require_connected()?;
    let n = g.n();
    let m = g.m();

    // lower priority wins a tie
    let (vertex_priority, edge_priority): (Vec<u64>, Vec<u64>) = match tie {
        TieBreak::Deterministic => ((0..n as u64).collect(), (0..m as u64).collect()),
        TieBreak::Seeded(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vp = (0..n).map(|_| rng.gen()).collect();
            let ep = (0..m).map(|_| rng.gen()).collect();
            (vp, ep)
        }
    };
    let secondary_degree = matches!(tie, TieBreak::Deterministic);

    let mut placed = VertexSet::empty();
    let mut vertex_order = Vec::with_capacity(n);
    let mut back = vec![0usize; n];
    for step in 0..n {
        let mut best: Option<VertexId> = None;
        for z in (0..n).filter(|&z| !placed.contains(z)) {
            // first vertex: maximum degree; later: maximum back degree
            let primary = |v: VertexId| if step == 0 { g.degree(v) } else { back[v] };
            best = match best {
                None => Some(z),
                Some(b) => {
                    let better = match primary(z).cmp(&primary(b)) {
                        std::cmp::Ordering::Greater => true,
                        std::cmp::Ordering::Less => false,
                        std::cmp::Ordering::Equal => {
                            if secondary_degree && step > 0 && g.degree(z) != g.degree(b) {
                                g.degree(z) > g.degree(b)
                            } else {
                                vertex_priority[z] < vertex_priority[b]
                            }
                        }
                    };
                    Some(if better { z } else { b })
                }
            };
        }
        let x = best.expect("an unplaced vertex remains");
        placed.insert(x);
        vertex_order.push(x);
        for &e in g.incident(x) {
            let (u, v) = g.endpoints(e);
            back[if u == x { v } else { u }] += 1;
        }
    }

    let mut pos = vec![0; n];
    for (i, &v) in vertex_order.iter().enumerate() {
        pos[v] = i;
    }
    let mut edge_order: Vec<EdgeId> = (0..m).collect();
    edge_order.sort_by_key(|&e| (edge_key(&pos, g, e), edge_priority[e]));
    let mut rank = vec![0; m];
    for (i, &e) in edge_order.iter().enumerate() {
        rank[e] = i;
    }
    Ok(EdgeOrder { vertex_order, edge_order, rank })
}

//! Brute-force ground truth: exact chromatic index, unpruned admissibility
//! and properness.

use crate::coloring::{AdmissibilityViolation, Color, FreeVertexSemantics, PartialColoring};
use crate::density::{density_with, DensityOptions};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexSet};
use crate::ordering::reorder;

/// Edge count accepted by [`chromatic_index`] without `force`.
pub const CHI_MAX_EDGES: usize = 40;
/// Hard vertex limit of [`naive_admissible`].
pub const NAIVE_MAX_VERTICES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub chi_prime: usize,
    /// A complete proper coloring with exactly `chi_prime` colors.
    pub optimal_coloring: PartialColoring,
}

pub fn chromatic_index(g: &Multigraph) -> Result<OracleResult> {
    chromatic_index_with(g, false)
}

/// Tries `k = max(Delta, omega), ...` until a `k`-edge-coloring exists; the
/// loop cannot pass `Delta + p`.
pub fn chromatic_index_with(g: &Multigraph, force: bool) -> Result<OracleResult> {
    if g.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.m() > CHI_MAX_EDGES && !force {
        return Err(Error::ScaleGuard { what: "chromatic index edge count", limit: CHI_MAX_EDGES, actual: g.m() });
    }
    let stats = g.stats();
    let omega = density_with(g, DensityOptions { force, ..Default::default() })?.omega;
    let lower = stats.max_degree.max(omega);
    let upper = stats.max_degree + stats.max_multiplicity;
    for k in lower..=upper {
        if let Some(colors) = k_edge_coloring(g, k)? {
            let assignment = colors.into_iter().map(Some).collect();
            let optimal_coloring = PartialColoring::new(g, k as Color, assignment)?;
            return Ok(OracleResult { chi_prime: k, optimal_coloring });
        }
    }
    Err(Error::UpperBoundExceeded(upper))
}

/// Edge visiting order for the search: the greedy ordering of each component,
/// components in order of their smallest vertex.
fn search_order(g: &Multigraph) -> Vec<EdgeId> {
    let mut out = Vec::with_capacity(g.m());
    for comp in g.connected_components() {
        let (sub, _, edge_map) = g.induced_subgraph(comp);
        if sub.m() == 0 {
            continue;
        }
        let order = reorder(&sub).expect("component is connected with edges");
        out.extend(order.edge_order.iter().map(|&e| edge_map[e]));
    }
    out
}

/// A proper coloring with colors `1..=k`, or `None` if there is none.
///
/// Backtracking over the search order with:
/// - color symmetry broken by introducing new colors in increasing order;
/// - consecutive parallel edges taking increasing colors;
/// - forward checking: every uncolored edge must keep an available color;
/// - a matching bound on a family of vertex sets: color `i` can still go on at
///   most `floor(#vertices of S missing i / 2)` uncolored edges inside `S`.
pub fn k_edge_coloring(g: &Multigraph, k: usize) -> Result<Option<Vec<Color>>> {
    if k > 64 {
        return Err(Error::InvalidParameter(format!("palette of {k} colors exceeds 64")));
    }
    if k == 0 {
        return Ok((g.m() == 0).then(Vec::new));
    }
    let order = search_order(g);
    let parallel_to_prev: Vec<bool> = (0..order.len())
        .map(|i| {
            i > 0 && {
                let (a, b) = g.endpoints(order[i - 1]);
                let (c, d) = g.endpoints(order[i]);
                (a.min(b), a.max(b)) == (c.min(d), c.max(d))
            }
        })
        .collect();

    let family = bound_family(g, k);
    let mut uncolored_in: Vec<usize> = family.iter().map(|&s| g.induced_edge_count(s)).collect();
    let edge_sets: Vec<Vec<usize>> = (0..g.m())
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (0..family.len()).filter(|&j| family[j].contains(u) && family[j].contains(v)).collect()
        })
        .collect();

    let mut search = ColoringSearch {
        g,
        k,
        order,
        parallel_to_prev,
        colors: vec![0; g.m()],
        used: vec![0; g.n()],
        missing: vec![VertexSet::full(g.n()); k],
        family,
        edge_sets,
    };
    if !search.bound_holds(&uncolored_in) {
        return Ok(None);
    }
    Ok(search.run(0, 0, &mut uncolored_in).then(|| search.colors.clone()))
}

/// Vertex sets whose matching bound is checked during the search: the whole
/// vertex set plus the tightest odd sets.
fn bound_family(g: &Multigraph, k: usize) -> Vec<VertexSet> {
    const KEEP: usize = 256;
    let n = g.n();
    let mut odd: Vec<(usize, VertexSet)> = Vec::new();
    if n <= 16 {
        for bits in 1u64..(1u64 << n) {
            let s = VertexSet::from_bits(bits);
            let size = s.len();
            if size >= 3 && size % 2 == 1 {
                let e = g.induced_edge_count(s);
                if e > 0 {
                    odd.push(((k * (size / 2)).saturating_sub(e), s));
                }
            }
        }
    } else {
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let s: VertexSet = [a, b, c].into_iter().collect();
                    let e = g.induced_edge_count(s);
                    if e > 0 {
                        odd.push((k.saturating_sub(e), s));
                    }
                }
            }
        }
    }
    odd.sort_unstable_by_key(|&(slack, s)| (slack, s.bits()));
    let mut family = vec![g.vertices()];
    family.extend(odd.into_iter().take(KEEP).map(|(_, s)| s).filter(|&s| s != g.vertices()));
    family
}

struct ColoringSearch<'a> {
    g: &'a Multigraph,
    k: usize,
    order: Vec<EdgeId>,
    parallel_to_prev: Vec<bool>,
    colors: Vec<Color>,
    /// Bitmask of colors at each vertex, bit `c - 1` for color `c`.
    used: Vec<u64>,
    /// Vertices missing each color, index `c - 1`.
    missing: Vec<VertexSet>,
    family: Vec<VertexSet>,
    /// Family members containing each edge.
    edge_sets: Vec<Vec<usize>>,
}

impl ColoringSearch<'_> {
    fn run(&mut self, depth: usize, max_used: usize, uncolored_in: &mut Vec<usize>) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let e = self.order[depth];
        let (u, v) = self.g.endpoints(e);
        let blocked = self.used[u] | self.used[v];
        let start = if self.parallel_to_prev[depth] { self.colors[self.order[depth - 1]] as usize + 1 } else { 1 };
        let stop = (max_used + 1).min(self.k);
        for c in start..=stop {
            let bit = 1u64 << (c - 1);
            if blocked & bit != 0 {
                continue;
            }
            self.colors[e] = c as Color;
            self.used[u] |= bit;
            self.used[v] |= bit;
            self.missing[c - 1].remove(u);
            self.missing[c - 1].remove(v);
            for &j in &self.edge_sets[e] {
                uncolored_in[j] -= 1;
            }

            if self.forward_ok(u, v)
                && self.bound_holds(uncolored_in)
                && self.run(depth + 1, max_used.max(c), uncolored_in)
            {
                return true;
            }

            for &j in &self.edge_sets[e] {
                uncolored_in[j] += 1;
            }
            self.missing[c - 1].insert(u);
            self.missing[c - 1].insert(v);
            self.used[u] &= !bit;
            self.used[v] &= !bit;
            self.colors[e] = 0;
        }
        false
    }

    fn forward_ok(&self, u: usize, v: usize) -> bool {
        let full = if self.k == 64 { u64::MAX } else { (1u64 << self.k) - 1 };
        [u, v].iter().all(|&x| {
            self.g.incident(x).iter().all(|&f| {
                if self.colors[f] != 0 {
                    return true;
                }
                let (a, b) = self.g.endpoints(f);
                (self.used[a] | self.used[b]) & full != full
            })
        })
    }

    fn bound_holds(&self, uncolored_in: &[usize]) -> bool {
        self.family.iter().zip(uncolored_in).all(|(&s, &need)| {
            need == 0 || self.missing.iter().map(|m| m.intersection(s).len() / 2).sum::<usize>() >= need
        })
    }
}

/// Checks every vertex subset directly against the definition, without any
/// pruning. Returns the smallest uncovered subset (by size, then bitmask).
pub fn naive_admissible(g: &Multigraph, phi: &PartialColoring) -> Result<Option<AdmissibilityViolation>> {
    naive_admissible_with(g, phi, FreeVertexSemantics::Verbatim)
}

pub fn naive_admissible_with(
    g: &Multigraph,
    phi: &PartialColoring,
    semantics: FreeVertexSemantics,
) -> Result<Option<AdmissibilityViolation>> {
    let n = g.n();
    if n > NAIVE_MAX_VERTICES {
        return Err(Error::ScaleGuard { what: "naive admissibility vertex count", limit: NAIVE_MAX_VERTICES, actual: n });
    }
    let k = phi.k() as usize;
    let m = g.m();
    let colors = phi.assignment();

    // free[e][i]: e uncolored and no edge sharing an endpoint with e has color i
    let mut free = vec![vec![false; k + 1]; m];
    for e in 0..m {
        if colors[e].is_some() {
            continue;
        }
        for i in 1..=k {
            free[e][i] = (0..m).all(|f| f == e || !g.adjacent(e, f) || colors[f] != Some(i as Color));
        }
    }

    let mut best: Option<AdmissibilityViolation> = None;
    for bits in 0u64..(1u64 << n) {
        let s = VertexSet::from_bits(bits);
        let inside = |e: EdgeId| {
            let (u, v) = g.endpoints(e);
            s.contains(u) && s.contains(v)
        };
        let uncolored = (0..m).filter(|&e| colors[e].is_none() && inside(e)).count();
        let mut cover = 0;
        for i in 1..=k {
            let free_count = s
                .iter()
                .filter(|&x| {
                    (0..m).any(|e| {
                        let (u, v) = g.endpoints(e);
                        (u == x || v == x)
                            && free[e][i]
                            && (semantics == FreeVertexSemantics::Verbatim || inside(e))
                    })
                })
                .count();
            cover += free_count / 2;
        }
        if cover < uncolored {
            let v = AdmissibilityViolation { subset: s, cover, uncolored_inside: uncolored };
            if best.is_none_or(|b| v.rank() < b.rank()) {
                best = Some(v);
            }
        }
    }
    Ok(best)
}

/// Whether no two adjacent colored edges share a color (and colors start at 1).
pub fn validate_coloring(g: &Multigraph, colors: &[Option<Color>]) -> bool {
    if colors.len() != g.m() {
        return false;
    }
    if colors.iter().flatten().any(|&c| c == 0) {
        return false;
    }
    for e in 0..g.m() {
        for f in e + 1..g.m() {
            if colors[e].is_some() && colors[e] == colors[f] && g.adjacent(e, f) {
                return false;
            }
        }
    }
    true
}

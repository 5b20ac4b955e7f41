//! Partial edge-colorings, cover values and the conditional greedy driver.
//!
//! For a partial coloring `phi` with palette `1..=k`:
//!
//! - an edge is *i-free* when it is uncolored and touches no edge colored `i`;
//! - a vertex is *i-free* when it is incident to an i-free edge;
//! - the cover value of `S` is `sum_i floor(|i-free vertices in S| / 2)`;
//! - `phi` is *admissible* when every `S` has cover value at least the number
//!   of uncolored edges with both ends in `S`.
//!
//! The greedy colors edges in a fixed order with the smallest color that keeps
//! the coloring admissible, and halts when no color does.

use std::collections::HashSet;
use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Multigraph, VertexId, VertexSet};
use crate::ordering::EdgeOrder;

/// Colors are `1..=k`.
pub type Color = u32;

/// Which vertices of `S` count as i-free when computing a cover value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum FreeVertexSemantics {
    /// Any vertex of `S` incident to an i-free edge, wherever that edge goes.
    #[default]
    Verbatim,
    /// Only vertices incident to an i-free edge with both ends in `S`.
    Strict,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialColoring {
    k: Color,
    assignment: Vec<Option<Color>>,
}

impl PartialColoring {
    /// All `m` edges uncolored.
    pub fn empty(m: usize, k: Color) -> Self {
        PartialColoring { k, assignment: vec![None; m] }
    }

    /// Checks palette range and properness.
    pub fn new(g: &Multigraph, k: Color, assignment: Vec<Option<Color>>) -> Result<Self> {
        if assignment.len() != g.m() {
            return Err(Error::ColoringLength { expected: g.m(), found: assignment.len() });
        }
        for &c in assignment.iter().flatten() {
            if c == 0 || c > k {
                return Err(Error::ColorOutOfRange { color: c, k });
            }
        }
        for v in 0..g.n() {
            let inc = g.incident(v);
            for (i, &e) in inc.iter().enumerate() {
                let Some(c) = assignment[e] else { continue };
                if let Some(&f) = inc[i + 1..].iter().find(|&&f| assignment[f] == Some(c)) {
                    return Err(Error::Improper { edge: f, color: c, conflict: e });
                }
            }
        }
        Ok(PartialColoring { k, assignment })
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn assignment(&self) -> &[Option<Color>] {
        &self.assignment
    }

    pub fn color(&self, e: EdgeId) -> Option<Color> {
        self.assignment[e]
    }

    pub fn colored_count(&self) -> usize {
        self.assignment.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.assignment.iter().all(Option::is_some)
    }

    /// The same assignment under a different palette size.
    pub fn with_palette(&self, k: Color) -> Result<Self> {
        if let Some(&c) = self.assignment.iter().flatten().find(|&&c| c > k) {
            return Err(Error::ColorOutOfRange { color: c, k });
        }
        Ok(PartialColoring { k, assignment: self.assignment.clone() })
    }

    /// Writes `<edge_id> <color>` lines; uncolored edges are omitted.
    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for (e, c) in self.assignment.iter().enumerate() {
            if let Some(c) = c {
                writeln!(w, "{e} {c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PartialColoring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialColoring(k={}, ", self.k)?;
        f.debug_map()
            .entries(self.assignment.iter().enumerate().filter_map(|(e, c)| c.map(|c| (e, c))))
            .finish()?;
        write!(f, ")")
    }
}

/// Parses a coloring file (`<edge_id> <color>` per line) for a graph with `m`
/// edges. Properness is not checked here.
pub fn parse_coloring(text: &str, m: usize) -> Result<Vec<Option<Color>>> {
    let mut out = vec![None; m];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: &str| Error::Parse { line, message: message.to_string() };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        let mut fields = trimmed.split_whitespace();
        let e: EdgeId = fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| err("invalid edge id"))?;
        let c: Color = fields.next().and_then(|f| f.parse().ok()).ok_or_else(|| err("invalid color"))?;
        if fields.next().is_some() {
            return Err(err("trailing fields"));
        }
        if e >= m {
            return Err(Error::UnknownEdge(e));
        }
        if c == 0 {
            return Err(err("colors start at 1"));
        }
        if out[e].replace(c).is_some() {
            return Err(err("edge colored twice"));
        }
    }
    Ok(out)
}

/// A subset `S` that `phi` fails to cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibilityViolation {
    pub subset: VertexSet,
    pub cover: usize,
    pub uncolored_inside: usize,
}

impl AdmissibilityViolation {
    /// Ordering used to pick a canonical violation: size, then bitmask.
    pub fn rank(&self) -> (usize, u64) {
        (self.subset.len(), self.subset.bits())
    }
}

impl fmt::Display for AdmissibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S={} cover={} uncolored_inside={}", self.subset, self.cover, self.uncolored_inside)
    }
}

pub fn is_free_edge(g: &Multigraph, phi: &PartialColoring, e: EdgeId, i: Color) -> bool {
    if phi.color(e).is_some() {
        return false;
    }
    let (u, v) = g.endpoints(e);
    [u, v].iter().all(|&x| g.incident(x).iter().all(|&f| phi.color(f) != Some(i)))
}

/// The i-free vertices of `s`.
pub fn free_vertices(g: &Multigraph, phi: &PartialColoring, i: Color, s: VertexSet) -> VertexSet {
    free_vertices_with(g, phi, i, s, FreeVertexSemantics::Verbatim)
}

pub fn free_vertices_with(
    g: &Multigraph,
    phi: &PartialColoring,
    i: Color,
    s: VertexSet,
    semantics: FreeVertexSemantics,
) -> VertexSet {
    s.iter()
        .filter(|&x| {
            g.incident(x).iter().any(|&e| {
                let (u, v) = g.endpoints(e);
                let inside = semantics == FreeVertexSemantics::Verbatim || (s.contains(u) && s.contains(v));
                inside && is_free_edge(g, phi, e, i)
            })
        })
        .collect()
}

pub fn cover_value(g: &Multigraph, phi: &PartialColoring, s: VertexSet) -> usize {
    cover_value_with(g, phi, s, FreeVertexSemantics::Verbatim)
}

pub fn cover_value_with(g: &Multigraph, phi: &PartialColoring, s: VertexSet, semantics: FreeVertexSemantics) -> usize {
    (1..=phi.k()).map(|i| free_vertices_with(g, phi, i, s, semantics).len() / 2).sum()
}

/// Uncolored edges with both endpoints in `s`.
pub fn uncolored_inside(g: &Multigraph, phi: &PartialColoring, s: VertexSet) -> usize {
    g.edges()
        .iter()
        .enumerate()
        .filter(|&(e, &(u, v))| phi.color(e).is_none() && s.contains(u) && s.contains(v))
        .count()
}

/// Precomputed free structure of one coloring, for evaluating many subsets.
struct CoverTable {
    semantics: FreeVertexSemantics,
    uncolored: Vec<(VertexId, VertexId)>,
    /// Verbatim: i-free vertices of the whole graph, per color.
    free_mask: Vec<VertexSet>,
    /// Strict: i-free edges, per color.
    free_edges: Vec<Vec<(VertexId, VertexId)>>,
}

impl CoverTable {
    fn new(g: &Multigraph, phi: &PartialColoring, semantics: FreeVertexSemantics) -> Self {
        let k = phi.k() as usize;
        // colors present at each vertex
        let mut present = vec![vec![false; k + 1]; g.n()];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if let Some(c) = phi.color(e) {
                present[u][c as usize] = true;
                present[v][c as usize] = true;
            }
        }
        let mut uncolored = Vec::new();
        let mut free_mask = vec![VertexSet::empty(); k + 1];
        let mut free_edges = vec![Vec::new(); k + 1];
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if phi.color(e).is_some() {
                continue;
            }
            uncolored.push((u, v));
            for i in 1..=k {
                if !present[u][i] && !present[v][i] {
                    free_mask[i] = free_mask[i].with(u).with(v);
                    free_edges[i].push((u, v));
                }
            }
        }
        CoverTable { semantics, uncolored, free_mask, free_edges }
    }

    fn uncolored_inside(&self, s: VertexSet) -> usize {
        self.uncolored.iter().filter(|&&(u, v)| s.contains(u) && s.contains(v)).count()
    }

    fn cover(&self, s: VertexSet) -> usize {
        match self.semantics {
            FreeVertexSemantics::Verbatim => {
                self.free_mask.iter().skip(1).map(|m| m.intersection(s).len() / 2).sum()
            }
            FreeVertexSemantics::Strict => self
                .free_edges
                .iter()
                .skip(1)
                .map(|edges| {
                    let mut inside = VertexSet::empty();
                    for &(u, v) in edges {
                        if s.contains(u) && s.contains(v) {
                            inside = inside.with(u).with(v);
                        }
                    }
                    inside.len() / 2
                })
                .sum(),
        }
    }

    fn violation(&self, s: VertexSet) -> Option<AdmissibilityViolation> {
        let uncolored_inside = self.uncolored_inside(s);
        if uncolored_inside == 0 {
            return None;
        }
        let cover = self.cover(s);
        (cover < uncolored_inside).then_some(AdmissibilityViolation { subset: s, cover, uncolored_inside })
    }
}

/// Smallest uncovered subset (by size, then bitmask), if any.
pub fn check_admissible(g: &Multigraph, phi: &PartialColoring) -> Option<AdmissibilityViolation> {
    check_admissible_with(g, phi, FreeVertexSemantics::Verbatim)
}

/// Searches only subsets that induce a connected subgraph of the uncolored
/// edges. A minimum violating set always has that shape:
///
/// - a vertex of `S` without an uncolored edge inside `S` can be dropped; the
///   uncolored count is unchanged and the cover value cannot grow;
/// - if the uncolored edges inside `S` split into parts `A`, `B` with no
///   uncolored edge between them, `cov(S) >= cov(A) + cov(B)` (as
///   `floor(a/2) + floor(b/2) <= floor((a+b)/2)`) while the uncolored count is
///   additive, so `A` or `B` is already uncovered.
///
/// Both hold under either free-vertex semantics. Connected sets are grown one
/// vertex at a time, level by level, so the first level with a violation
/// holds the minimum.
pub fn check_admissible_with(
    g: &Multigraph,
    phi: &PartialColoring,
    semantics: FreeVertexSemantics,
) -> Option<AdmissibilityViolation> {
    let table = CoverTable::new(g, phi, semantics);
    if table.uncolored.is_empty() {
        return None;
    }
    let mut uncolored_adj = vec![VertexSet::empty(); g.n()];
    for &(u, v) in &table.uncolored {
        uncolored_adj[u].insert(v);
        uncolored_adj[v].insert(u);
    }

    let mut level: Vec<VertexSet> = {
        let pairs: HashSet<VertexSet> =
            table.uncolored.iter().map(|&(u, v)| VertexSet::singleton(u).with(v)).collect();
        pairs.into_iter().collect()
    };
    while !level.is_empty() {
        let found = level.iter().filter_map(|&s| table.violation(s)).min_by_key(|v| v.subset.bits());
        if found.is_some() {
            return found;
        }
        let mut next = HashSet::new();
        for &s in &level {
            let mut boundary = VertexSet::empty();
            for v in s.iter() {
                boundary = boundary.union(uncolored_adj[v]);
            }
            for w in boundary.difference(s).iter() {
                next.insert(s.with(w));
            }
        }
        level = next.into_iter().collect();
    }
    None
}

/// `phi` with edge `e` colored `c`; `phi` itself is untouched.
pub fn extend(g: &Multigraph, phi: &PartialColoring, e: EdgeId, c: Color) -> Result<PartialColoring> {
    if e >= g.m() {
        return Err(Error::UnknownEdge(e));
    }
    if phi.color(e).is_some() {
        return Err(Error::AlreadyColored(e));
    }
    if c == 0 || c > phi.k() {
        return Err(Error::ColorOutOfRange { color: c, k: phi.k() });
    }
    if let Some(conflict) = clash(g, phi, e, c) {
        return Err(Error::Improper { edge: e, color: c, conflict });
    }
    let mut next = phi.clone();
    next.assignment[e] = Some(c);
    Ok(next)
}

/// An edge adjacent to `e` already colored `c`.
fn clash(g: &Multigraph, phi: &PartialColoring, e: EdgeId, c: Color) -> Option<EdgeId> {
    let (u, v) = g.endpoints(e);
    [u, v]
        .iter()
        .flat_map(|&x| g.incident(x).iter().copied())
        .filter(|&f| f != e && phi.color(f) == Some(c))
        .min()
}

/// Why a candidate color was not taken.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rejection {
    /// An adjacent edge already has the color.
    Improper { conflict: EdgeId },
    /// The extension is proper but leaves a subset uncovered.
    Violation(AdmissibilityViolation),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Colored(Color),
    /// No admissible color; carries the smallest violation among the
    /// rejected colors (none if every color was improper).
    Halted(Option<AdmissibilityViolation>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub edge: EdgeId,
    pub endpoints: (VertexId, VertexId),
    pub outcome: Outcome,
    /// Colors tried before the outcome, ascending.
    pub rejections: Vec<(Color, Rejection)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunTrace {
    pub order: EdgeOrder,
    pub k: Color,
    pub semantics: FreeVertexSemantics,
    pub steps: Vec<Step>,
    pub final_coloring: PartialColoring,
    pub complete: bool,
}

impl RunTrace {
    /// 1-based index of the halting step.
    pub fn halt_step(&self) -> Option<usize> {
        match self.steps.last() {
            Some(Step { outcome: Outcome::Halted(_), .. }) => Some(self.steps.len()),
            _ => None,
        }
    }

    pub fn halt_violation(&self) -> Option<AdmissibilityViolation> {
        match self.steps.last()?.outcome {
            Outcome::Halted(v) => v,
            Outcome::Colored(_) => None,
        }
    }

    /// Colors chosen, in step order.
    pub fn chosen_colors(&self) -> Vec<Color> {
        self.steps
            .iter()
            .filter_map(|s| match s.outcome {
                Outcome::Colored(c) => Some(c),
                Outcome::Halted(_) => None,
            })
            .collect()
    }

    /// The coloring after each colored step, starting with the empty one.
    pub fn prefixes(&self) -> Vec<PartialColoring> {
        let mut phi = PartialColoring::empty(self.final_coloring.assignment.len(), self.k);
        let mut out = vec![phi.clone()];
        for step in &self.steps {
            if let Outcome::Colored(c) = step.outcome {
                phi.assignment[step.edge] = Some(c);
                out.push(phi.clone());
            }
        }
        out
    }

    /// One JSON record per step.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for (i, step) in self.steps.iter().enumerate() {
            serde_json::to_writer(&mut w, &StepRecord::new(i + 1, step, None))?;
            writeln!(w)?;
        }
        Ok(())
    }

    /// Like [`RunTrace::write_jsonl`], renaming edges and vertices through
    /// the given maps and tagging each record with a component index.
    pub fn write_jsonl_mapped<W: Write>(
        &self,
        mut w: W,
        component: usize,
        vertex_map: &[VertexId],
        edge_map: &[EdgeId],
    ) -> Result<()> {
        for (i, step) in self.steps.iter().enumerate() {
            let mapped = map_step(step, vertex_map, edge_map);
            serde_json::to_writer(&mut w, &StepRecord::new(i + 1, &mapped, Some(component)))?;
            writeln!(w)?;
        }
        Ok(())
    }
}

fn map_step(step: &Step, vertex_map: &[VertexId], edge_map: &[EdgeId]) -> Step {
    let map_violation = |v: AdmissibilityViolation| AdmissibilityViolation {
        subset: v.subset.iter().map(|x| vertex_map[x]).collect(),
        ..v
    };
    Step {
        edge: edge_map[step.edge],
        endpoints: (vertex_map[step.endpoints.0], vertex_map[step.endpoints.1]),
        outcome: match step.outcome {
            Outcome::Halted(v) => Outcome::Halted(v.map(map_violation)),
            other => other,
        },
        rejections: step
            .rejections
            .iter()
            .map(|&(c, r)| {
                let r = match r {
                    Rejection::Improper { conflict } => Rejection::Improper { conflict: edge_map[conflict] },
                    Rejection::Violation(v) => Rejection::Violation(map_violation(v)),
                };
                (c, r)
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct StepRecord {
    step: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    component: Option<usize>,
    edge: EdgeId,
    u: VertexId,
    v: VertexId,
    color: ColorField,
    #[serde(skip_serializing_if = "Option::is_none")]
    violation: Option<ViolationRecord>,
    rejected: Vec<RejectionRecord>,
}

#[derive(Serialize)]
#[serde(untagged)]
enum ColorField {
    Color(Color),
    Halt(&'static str),
}

#[derive(Serialize)]
struct ViolationRecord {
    subset: Vec<VertexId>,
    cover: usize,
    uncolored_inside: usize,
}

impl From<AdmissibilityViolation> for ViolationRecord {
    fn from(v: AdmissibilityViolation) -> Self {
        ViolationRecord { subset: v.subset.to_vec(), cover: v.cover, uncolored_inside: v.uncolored_inside }
    }
}

#[derive(Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
enum RejectionRecord {
    Improper { color: Color, conflict: EdgeId },
    Violation { color: Color, subset: Vec<VertexId>, cover: usize, uncolored_inside: usize },
}

impl StepRecord {
    fn new(index: usize, step: &Step, component: Option<usize>) -> Self {
        let (color, violation) = match step.outcome {
            Outcome::Colored(c) => (ColorField::Color(c), None),
            Outcome::Halted(v) => (ColorField::Halt("halt"), v.map(Into::into)),
        };
        let rejected = step
            .rejections
            .iter()
            .map(|&(color, r)| match r {
                Rejection::Improper { conflict } => RejectionRecord::Improper { color, conflict },
                Rejection::Violation(v) => RejectionRecord::Violation {
                    color,
                    subset: v.subset.to_vec(),
                    cover: v.cover,
                    uncolored_inside: v.uncolored_inside,
                },
            })
            .collect();
        StepRecord {
            step: index,
            component,
            edge: step.edge,
            u: step.endpoints.0,
            v: step.endpoints.1,
            color,
            violation,
            rejected,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyOptions {
    pub semantics: FreeVertexSemantics,
}

pub fn conditional_greedy(g: &Multigraph, k: Color, order: &EdgeOrder) -> Result<RunTrace> {
    conditional_greedy_with(g, k, order, GreedyOptions::default())
}

/// Colors the edges in `order.edge_order`, each with the smallest color whose
/// extension is proper and admissible. Improper colors are skipped without
/// evaluating admissibility. Halting is an outcome recorded in the trace.
pub fn conditional_greedy_with(g: &Multigraph, k: Color, order: &EdgeOrder, opts: GreedyOptions) -> Result<RunTrace> {
    g.require_connected()?;
    if k == 0 {
        return Err(Error::EmptyPalette);
    }
    if order.edge_order.len() != g.m() {
        return Err(Error::InvalidParameter(format!(
            "edge order has {} entries for {} edges",
            order.edge_order.len(),
            g.m()
        )));
    }

    let mut phi = PartialColoring::empty(g.m(), k);
    let mut steps = Vec::with_capacity(g.m());
    let mut halted = false;
    for &e in &order.edge_order {
        let mut rejections = Vec::new();
        let mut chosen = None;
        for c in 1..=k {
            if let Some(conflict) = clash(g, &phi, e, c) {
                rejections.push((c, Rejection::Improper { conflict }));
                continue;
            }
            let mut candidate = phi.clone();
            candidate.assignment[e] = Some(c);
            match check_admissible_with(g, &candidate, opts.semantics) {
                None => {
                    chosen = Some((c, candidate));
                    break;
                }
                Some(v) => rejections.push((c, Rejection::Violation(v))),
            }
        }
        let endpoints = g.endpoints(e);
        match chosen {
            Some((c, next)) => {
                phi = next;
                steps.push(Step { edge: e, endpoints, outcome: Outcome::Colored(c), rejections });
            }
            None => {
                let smallest = rejections
                    .iter()
                    .filter_map(|(_, r)| match r {
                        Rejection::Violation(v) => Some(*v),
                        Rejection::Improper { .. } => None,
                    })
                    .min_by_key(AdmissibilityViolation::rank);
                steps.push(Step { edge: e, endpoints, outcome: Outcome::Halted(smallest), rejections });
                halted = true;
                break;
            }
        }
    }
    let complete = !halted && phi.is_complete();
    Ok(RunTrace { order: order.clone(), k, semantics: opts.semantics, steps, final_coloring: phi, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::reorder;

    fn g(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::build(n, edges.to_vec()).unwrap()
    }

    fn k3() -> Multigraph {
        g(3, &[(0, 1), (0, 2), (1, 2)])
    }

    fn star() -> Multigraph {
        g(4, &[(0, 1), (0, 2), (0, 3)])
    }

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    fn colored(g: &Multigraph, k: Color, pairs: &[(EdgeId, Color)]) -> PartialColoring {
        let mut a = vec![None; g.m()];
        for &(e, c) in pairs {
            a[e] = Some(c);
        }
        PartialColoring::new(g, k, a).unwrap()
    }

    #[test]
    fn free_edges() {
        let g = k3();
        let phi = colored(&g, 3, &[(0, 1)]);
        assert!(!is_free_edge(&g, &phi, 1, 1));
        assert!(is_free_edge(&g, &phi, 1, 2));
        let total = colored(&g, 3, &[(0, 1), (1, 2), (2, 3)]);
        for e in 0..3 {
            for i in 1..=3 {
                assert!(!is_free_edge(&g, &total, e, i));
            }
        }
    }

    #[test]
    fn free_vertex_sets() {
        let g = k3();
        let phi = colored(&g, 3, &[(0, 1)]);
        assert_eq!(free_vertices(&g, &phi, 2, set(&[0, 1, 2])), set(&[0, 1, 2]));
        assert_eq!(free_vertices(&g, &phi, 1, set(&[0, 1, 2])), VertexSet::empty());
        let k2 = g2();
        assert_eq!(free_vertices(&k2, &PartialColoring::empty(1, 1), 1, set(&[0, 1])), set(&[0, 1]));
    }

    fn g2() -> Multigraph {
        g(2, &[(0, 1)])
    }

    #[test]
    fn strict_semantics_needs_edge_inside() {
        let g = star();
        let phi = PartialColoring::empty(3, 2);
        // {1,2}: both leaves are free via edges leaving the set
        let s = set(&[1, 2]);
        assert_eq!(free_vertices(&g, &phi, 1, s), s);
        assert_eq!(free_vertices_with(&g, &phi, 1, s, FreeVertexSemantics::Strict), VertexSet::empty());
        assert_eq!(cover_value(&g, &phi, s), 2);
        assert_eq!(cover_value_with(&g, &phi, s, FreeVertexSemantics::Strict), 0);
    }

    #[test]
    fn cover_values() {
        let g = k3();
        assert_eq!(cover_value(&g, &PartialColoring::empty(3, 3), g.vertices()), 3);
        assert_eq!(cover_value(&g, &colored(&g, 3, &[(0, 1)]), g.vertices()), 2);
        assert_eq!(cover_value(&g, &colored(&g, 3, &[(0, 1)]), VertexSet::empty()), 0);
    }

    #[test]
    fn uncolored_counts() {
        let g = k3();
        assert_eq!(uncolored_inside(&g, &PartialColoring::empty(3, 3), g.vertices()), 3);
        assert_eq!(uncolored_inside(&g, &colored(&g, 3, &[(0, 1)]), set(&[0, 1])), 0);
        let s = star();
        assert_eq!(uncolored_inside(&s, &colored(&s, 2, &[(0, 1)]), set(&[0, 2, 3])), 2);
    }

    #[test]
    fn admissibility_examples() {
        let g = k3();
        assert_eq!(check_admissible(&g, &PartialColoring::empty(3, 3)), None);
        let s = star();
        let v = check_admissible(&s, &colored(&s, 2, &[(0, 1)])).unwrap();
        assert_eq!(v, AdmissibilityViolation { subset: set(&[0, 2, 3]), cover: 1, uncolored_inside: 2 });
        assert_eq!(check_admissible(&g, &colored(&g, 3, &[(0, 1), (1, 2), (2, 3)])), None);
    }

    #[test]
    fn extend_examples() {
        let k2 = g2();
        let phi = extend(&k2, &PartialColoring::empty(1, 1), 0, 1).unwrap();
        assert_eq!(phi.assignment(), &[Some(1)]);

        let g = k3();
        let phi = colored(&g, 3, &[(0, 1)]);
        assert!(matches!(extend(&g, &phi, 1, 1), Err(Error::Improper { conflict: 0, .. })));
        let next = extend(&g, &phi, 1, 2).unwrap();
        assert_eq!(next.assignment(), &[Some(1), Some(2), None]);
        assert_eq!(phi.assignment(), &[Some(1), None, None]);
        assert!(matches!(extend(&g, &phi, 0, 2), Err(Error::AlreadyColored(0))));
        assert!(matches!(extend(&g, &phi, 1, 4), Err(Error::ColorOutOfRange { .. })));
        assert!(matches!(extend(&g, &phi, 1, 0), Err(Error::ColorOutOfRange { .. })));
        assert!(matches!(extend(&g, &phi, 7, 1), Err(Error::UnknownEdge(7))));
    }

    #[test]
    fn coloring_constructor_checks() {
        let g = k3();
        assert!(matches!(
            PartialColoring::new(&g, 3, vec![Some(1), Some(1), None]),
            Err(Error::Improper { .. })
        ));
        assert!(matches!(
            PartialColoring::new(&g, 2, vec![Some(3), None, None]),
            Err(Error::ColorOutOfRange { .. })
        ));
        assert!(matches!(PartialColoring::new(&g, 2, vec![None]), Err(Error::ColoringLength { .. })));
    }

    #[test]
    fn greedy_triangle() {
        let g = k3();
        let t = conditional_greedy(&g, 3, &reorder(&g).unwrap()).unwrap();
        assert!(t.complete);
        assert_eq!(t.chosen_colors(), vec![1, 2, 3]);
        assert_eq!(t.halt_step(), None);
        assert_eq!(t.steps[1].rejections, vec![(1, Rejection::Improper { conflict: 0 })]);
    }

    #[test]
    fn greedy_star_halts_immediately() {
        let g = star();
        let t = conditional_greedy(&g, 2, &reorder(&g).unwrap()).unwrap();
        assert!(!t.complete);
        assert_eq!(t.halt_step(), Some(1));
        assert_eq!(t.final_coloring.colored_count(), 0);
        let v = t.halt_violation().unwrap();
        assert_eq!((v.subset, v.cover, v.uncolored_inside), (set(&[0, 2, 3]), 1, 2));
        assert_eq!(t.steps[0].rejections.len(), 2);
    }

    #[test]
    fn greedy_single_edge() {
        let k2 = g2();
        let t = conditional_greedy(&k2, 1, &reorder(&k2).unwrap()).unwrap();
        assert!(t.complete);
        assert_eq!(t.chosen_colors(), vec![1]);
    }

    #[test]
    fn greedy_shannon_triangle() {
        let sh = g(3, &[(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]);
        let t = conditional_greedy(&sh, 6, &reorder(&sh).unwrap()).unwrap();
        assert!(t.complete);
        let mut colors = t.chosen_colors();
        colors.sort_unstable();
        assert_eq!(colors, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn greedy_preconditions() {
        let h = g(4, &[(0, 1), (2, 3)]);
        let order = EdgeOrder { vertex_order: vec![0, 1, 2, 3], edge_order: vec![0, 1], rank: vec![0, 1] };
        assert!(matches!(conditional_greedy(&h, 2, &order), Err(Error::Disconnected { .. })));
        let k2 = g2();
        assert!(matches!(conditional_greedy(&k2, 0, &reorder(&k2).unwrap()), Err(Error::EmptyPalette)));
    }

    #[test]
    fn trace_records() {
        let g = star();
        let t = conditional_greedy(&g, 2, &reorder(&g).unwrap()).unwrap();
        let mut buf = Vec::new();
        t.write_jsonl(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            concat!(
                r#"{"step":1,"edge":0,"u":0,"v":1,"color":"halt","violation":{"subset":[0,2,3],"cover":1,"uncolored_inside":2},"#,
                r#""rejected":[{"reason":"violation","color":1,"subset":[0,2,3],"cover":1,"uncolored_inside":2},"#,
                r#"{"reason":"violation","color":2,"subset":[0,2,3],"cover":1,"uncolored_inside":2}]}"#,
                "\n"
            )
        );
    }

    #[test]
    fn coloring_file() {
        let g = k3();
        let phi = colored(&g, 3, &[(0, 1), (2, 3)]);
        let mut buf = Vec::new();
        phi.write_to(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0 1\n2 3\n");
        assert_eq!(parse_coloring(std::str::from_utf8(&buf).unwrap(), 3).unwrap(), phi.assignment());
        assert!(matches!(parse_coloring("5 1\n", 3), Err(Error::UnknownEdge(5))));
        assert!(parse_coloring("0 1\n0 2\n", 3).is_err());
        assert!(parse_coloring("0 0\n", 3).is_err());
    }

    #[test]
    fn prefixes_replay_the_run() {
        let g = k3();
        let t = conditional_greedy(&g, 3, &reorder(&g).unwrap()).unwrap();
        let p = t.prefixes();
        assert_eq!(p.len(), 4);
        assert_eq!(p[0].colored_count(), 0);
        assert_eq!(p.last().unwrap(), &t.final_coloring);
    }
}

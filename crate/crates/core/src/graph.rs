//! Loop-free undirected multigraphs.
//!
//! Vertices are dense ids `0..n`, edges keep the id given by their position in
//! the construction list. Vertex subsets are bitmasks over at most
//! [`MAX_VERTICES`] ids, which is what the exponential routines in the rest of
//! the crate iterate over.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Largest vertex count a [`Multigraph`] may have.
pub const MAX_VERTICES: usize = 64;

/// A set of vertex ids stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const fn empty() -> Self {
        VertexSet(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, 1, ..., n - 1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < MAX_VERTICES && self.0 & (1u64 << v) != 0
    }

    pub fn insert(&mut self, v: VertexId) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: VertexId) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: VertexId) -> Self {
        VertexSet(self.0 | (1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<VertexId> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<VertexId> {
        self.iter().collect()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::empty();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Degree statistics of a multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphStats {
    /// Maximum vertex degree, parallel edges counted individually.
    pub max_degree: usize,
    /// Largest number of parallel edges between one pair of vertices.
    pub max_multiplicity: usize,
    pub degree_sequence: Vec<usize>,
}

/// An immutable loop-free undirected multigraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    name: Option<String>,
    incident: Vec<Vec<EdgeId>>,
    neighbors: Vec<VertexSet>,
}

impl Multigraph {
    /// Builds a multigraph on `n` vertices; edge `i` is `edges[i]`.
    pub fn build(n: usize, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        if n < 1 {
            return Err(Error::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut incident = vec![Vec::new(); n];
        let mut neighbors = vec![VertexSet::empty(); n];
        for (id, &(u, v)) in edges.iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { edge: id, vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { edge: id, vertex: u });
            }
            incident[u].push(id);
            incident[v].push(id);
            neighbors[u].insert(v);
            neighbors[v].insert(u);
        }
        Ok(Multigraph { n, edges, name: None, incident, neighbors })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Edge ids incident to `v`, ascending.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incident[v]
    }

    /// Distinct neighbours of `v`.
    pub fn neighbors(&self, v: VertexId) -> VertexSet {
        self.neighbors[v]
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident[v].len()
    }

    /// Number of parallel edges joining `u` and `v`.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> usize {
        self.incident[u]
            .iter()
            .filter(|&&e| {
                let (a, b) = self.edges[e];
                (a == u && b == v) || (a == v && b == u)
            })
            .count()
    }

    /// Whether two distinct edges share an endpoint.
    pub fn adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        if e == f {
            return false;
        }
        let (a, b) = self.edges[e];
        let (c, d) = self.edges[f];
        a == c || a == d || b == c || b == d
    }

    pub fn stats(&self) -> GraphStats {
        let degree_sequence: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let max_degree = degree_sequence.iter().copied().max().unwrap_or(0);
        let mut max_multiplicity = 0;
        let mut pairs: Vec<(VertexId, VertexId)> =
            self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        pairs.sort_unstable();
        let mut run = 0;
        for (i, p) in pairs.iter().enumerate() {
            run = if i > 0 && pairs[i - 1] == *p { run + 1 } else { 1 };
            max_multiplicity = max_multiplicity.max(run);
        }
        GraphStats { max_degree, max_multiplicity, degree_sequence }
    }

    /// Number of edges with both endpoints in `s`.
    pub fn induced_edge_count(&self, s: VertexSet) -> usize {
        self.edges.iter().filter(|&&(u, v)| s.contains(u) && s.contains(v)).count()
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    /// Isolated vertices form singleton components.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::empty();
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::empty();
                for v in frontier.iter() {
                    next = next.union(self.neighbors[v]);
                }
                frontier = next.difference(comp);
                comp = comp.union(frontier);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Rejects graphs the coloring procedures are not defined on: no edges,
    /// a single vertex, or more than one component.
    pub fn require_connected(&self) -> Result<()> {
        if self.m() == 0 || self.n < 2 {
            return Err(Error::EmptyGraph);
        }
        let components = self.connected_components().len();
        if components != 1 {
            return Err(Error::Disconnected { components });
        }
        Ok(())
    }

    /// Subgraph induced on `s`, relabelled to `0..|s|` in increasing id order.
    /// Returns the subgraph, the original id of each new vertex and the
    /// original id of each new edge.
    pub fn induced_subgraph(&self, s: VertexSet) -> (Multigraph, Vec<VertexId>, Vec<EdgeId>) {
        let vertex_map = s.to_vec();
        let mut new_id = vec![usize::MAX; self.n];
        for (i, &v) in vertex_map.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        let mut edge_map = Vec::new();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if s.contains(u) && s.contains(v) {
                edges.push((new_id[u], new_id[v]));
                edge_map.push(id);
            }
        }
        let mut sub = Multigraph::build(vertex_map.len().max(1), edges)
            .expect("induced subgraph of a valid graph is valid");
        sub.name = self.name.clone();
        (sub, vertex_map, edge_map)
    }

    /// Writes the canonical instance text.
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        if let Some(name) = &self.name {
            writeln!(w, "c name {name}")?;
        }
        writeln!(w, "p multigraph {} {}", self.n, self.edges.len())?;
        for (u, v) in &self.edges {
            writeln!(w, "e {u} {v}")?;
        }
        Ok(())
    }

    pub fn serialize(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("instance text is ASCII")
    }

    /// Parses the instance format:
    ///
    /// ```text
    /// c optional comment; `c name <label>` sets the instance name
    /// p multigraph <n> <m>
    /// e <u> <v>        (exactly m lines, 0-based ids)
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut name = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: String| Error::Parse { line, message };
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            match fields.next() {
                Some("c") => {
                    if let Some(label) = trimmed.strip_prefix("c name ") {
                        name = Some(label.trim().to_string());
                    }
                }
                Some("p") => {
                    if header.is_some() {
                        return Err(err("duplicate header".into()));
                    }
                    if fields.next() != Some("multigraph") {
                        return Err(err("expected `p multigraph <n> <m>`".into()));
                    }
                    let n = parse_field(fields.next(), line, "vertex count")?;
                    let m = parse_field(fields.next(), line, "edge count")?;
                    if fields.next().is_some() {
                        return Err(err("trailing fields in header".into()));
                    }
                    header = Some((n, m));
                }
                Some("e") => {
                    let Some((n, _)) = header else {
                        return Err(err("edge line before header".into()));
                    };
                    let u: usize = parse_field(fields.next(), line, "endpoint")?;
                    let v: usize = parse_field(fields.next(), line, "endpoint")?;
                    if fields.next().is_some() {
                        return Err(err("trailing fields in edge line".into()));
                    }
                    for w in [u, v] {
                        if w >= n {
                            return Err(Error::VertexOutOfRange { edge: edges.len(), vertex: w, n });
                        }
                    }
                    edges.push((u, v));
                }
                Some(other) => return Err(err(format!("unknown line type `{other}`"))),
                None => unreachable!(),
            }
        }
        let (n, m) = header.ok_or(Error::Parse { line: 0, message: "missing header".into() })?;
        if edges.len() != m {
            return Err(Error::EdgeCountMismatch { expected: m, found: edges.len() });
        }
        let mut g = Multigraph::build(n, edges)?;
        g.name = name;
        Ok(g)
    }
}

fn parse_field<T: FromStr>(field: Option<&str>, line: usize, what: &str) -> Result<T> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::Parse { line, message: format!("missing or invalid {what}") })
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Multigraph::parse(s)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

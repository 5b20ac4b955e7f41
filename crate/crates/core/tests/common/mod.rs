#![allow(dead_code)]

use edgecolor::{Color, Multigraph, PartialColoring};
use proptest::prelude::*;

/// Loop-free multigraph on `2..=max_n` vertices with up to `max_m` edges.
pub fn multigraph(max_n: usize, max_m: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 1..n), 0..=max_m).prop_map(move |pairs| {
            let edges = pairs.into_iter().map(|(u, d)| (u, (u + d) % n)).collect();
            Multigraph::build(n, edges).unwrap()
        })
    })
}

/// Connected multigraph: a random spanning tree plus extra edges, with every
/// pair's multiplicity capped at `max_mult`.
pub fn connected_multigraph(max_n: usize, extra: usize, max_mult: usize) -> impl Strategy<Value = Multigraph> {
    (2..=max_n).prop_flat_map(move |n| {
        let parents = prop::collection::vec(any::<prop::sample::Index>(), n - 1);
        let more = prop::collection::vec((0..n, 1..n), 0..=extra);
        (parents, more).prop_map(move |(parents, more)| {
            let mut edges: Vec<(usize, usize)> =
                parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1)).collect();
            for (u, d) in more {
                let v = (u + d) % n;
                let count = edges.iter().filter(|&&(a, b)| (a, b) == (u, v) || (a, b) == (v, u)).count();
                if count < max_mult {
                    edges.push((u, v));
                }
            }
            Multigraph::build(n, edges).unwrap()
        })
    })
}

/// A proper partial coloring driven by `choices`: each edge in id order is
/// left uncolored or given the chosen color when that keeps it proper.
pub fn partial_coloring(g: &Multigraph, k: Color, choices: &[u32]) -> PartialColoring {
    let mut assignment: Vec<Option<Color>> = vec![None; g.m()];
    for e in 0..g.m() {
        let r = choices.get(e).copied().unwrap_or(0);
        if r % (k + 1) == 0 {
            continue;
        }
        let c = r % k + 1;
        let (u, v) = g.endpoints(e);
        let clash = g.incident(u).iter().chain(g.incident(v)).any(|&f| assignment[f] == Some(c));
        if !clash {
            assignment[e] = Some(c);
        }
    }
    PartialColoring::new(g, k, assignment).unwrap()
}

pub fn petersen() -> Multigraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Multigraph::build(10, edges).unwrap()
}

/// Density straight from the definition: every subset as a boolean mask,
/// ratio rounded up in floating point.
pub fn brute_density(g: &Multigraph) -> usize {
    let n = g.n();
    let mut best = 0usize;
    for mask in 0u32..(1 << n) {
        let member: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
        let size = member.iter().filter(|&&b| b).count();
        if size < 2 {
            continue;
        }
        let e = g.edges().iter().filter(|&&(u, v)| member[u] && member[v]).count();
        let ratio = (e as f64 / (size / 2) as f64).ceil() as usize;
        best = best.max(ratio);
    }
    best
}

/// Smallest `k` admitting a proper coloring, by enumerating all `k^m`
/// assignments.
pub fn brute_chromatic_index(g: &Multigraph) -> usize {
    let m = g.m();
    for k in 1.. {
        let mut colors = vec![0usize; m];
        loop {
            let proper = (0..m).all(|e| (e + 1..m).all(|f| colors[e] != colors[f] || !g.adjacent(e, f)));
            if proper {
                return k;
            }
            // next assignment in base k
            let mut i = 0;
            while i < m && colors[i] == k - 1 {
                colors[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            colors[i] += 1;
        }
    }
    unreachable!()
}

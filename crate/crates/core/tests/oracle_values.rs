//! Expected values computed by independent brute force, then checked against
//! the library.

mod common;

use common::*;
use edgecolor::harness::{generate, InstanceSpec};
use edgecolor::*;

fn g(n: usize, edges: &[(usize, usize)]) -> Multigraph {
    Multigraph::build(n, edges.to_vec()).unwrap()
}

fn shannon() -> Multigraph {
    g(3, &[(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)])
}

#[test]
fn density_values() {
    let cases = [
        (g(2, &[(0, 1)]), 1),
        (g(3, &[(0, 1), (0, 2), (1, 2)]), 3),
        (shannon(), 6),
        (petersen(), 3),
        (generate(&"thick_ring:5,2".parse::<InstanceSpec>().unwrap()).unwrap(), 5),
    ];
    for (graph, expected) in cases {
        assert_eq!(brute_density(&graph), expected);
        assert_eq!(density(&graph).unwrap().omega, expected);
    }
}

/// Petersen is not 3-edge-colorable: a 3-edge-coloring of a cubic graph is a
/// partition into three perfect matchings, and no three of its perfect
/// matchings are pairwise disjoint.
#[test]
fn petersen_needs_four_colors() {
    let p = petersen();
    let m = p.m();
    let mut matchings: Vec<u32> = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() != 5 {
            continue;
        }
        let mut covered = 0u32;
        let mut ok = true;
        for e in (0..m).filter(|e| mask >> e & 1 == 1) {
            let (u, v) = p.endpoints(e);
            if covered >> u & 1 == 1 || covered >> v & 1 == 1 {
                ok = false;
                break;
            }
            covered |= 1 << u | 1 << v;
        }
        if ok {
            matchings.push(mask);
        }
    }
    assert_eq!(matchings.len(), 6);
    let full = (1u32 << m) - 1;
    for a in &matchings {
        for b in &matchings {
            for c in &matchings {
                assert_ne!(a | b | c, full);
            }
        }
    }
    let r = chromatic_index(&p).unwrap();
    assert_eq!(r.chi_prime, 4);
    assert!(validate_coloring(&p, r.optimal_coloring.assignment()));
}

#[test]
fn chromatic_index_values() {
    let star = g(4, &[(0, 1), (0, 2), (0, 3)]);
    let k3 = g(3, &[(0, 1), (0, 2), (1, 2)]);
    for (graph, expected) in [(k3, 3), (star, 3), (shannon(), 6)] {
        assert_eq!(brute_chromatic_index(&graph), expected);
        assert_eq!(chromatic_index(&graph).unwrap().chi_prime, expected);
    }
}

#[test]
fn fat_triangles_need_one_color_per_edge() {
    for spec in edgecolor::harness::fat_triangle_grid(1, 3) {
        let graph = generate(&spec).unwrap();
        assert_eq!(chromatic_index(&graph).unwrap().chi_prime, graph.m(), "{spec}");
        assert_eq!(density(&graph).unwrap().omega, graph.m(), "{spec}");
    }
}

/// Odd rings of multiplicity `t`: every color class is a matching of at most
/// `(r - 1) / 2` edges, so at least `ceil(r t / ((r - 1) / 2))` colors are
/// needed, and never fewer than the degree `2t`; the search finds colorings
/// meeting that bound.
#[test]
fn thick_ring_values() {
    for (r, t) in [(3usize, 2usize), (5, 2), (5, 3), (7, 2), (7, 3), (7, 4)] {
        let graph = generate(&format!("thick_ring:{r},{t}").parse::<InstanceSpec>().unwrap()).unwrap();
        let expected = (2 * t).max((r * t).div_ceil((r - 1) / 2));
        assert_eq!(chromatic_index(&graph).unwrap().chi_prime, expected, "ring {r},{t}");
    }
}

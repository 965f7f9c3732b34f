//! Deterministic graph families and seeded random generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Graph;
use crate::error::{Error, Result};

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).expect("valid clique")
}

/// Parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
        .expect("valid bipartite graph")
}

/// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i ~ i + 5`.
pub fn petersen() -> Graph {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("valid Petersen graph")
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Normalized projective points of PG(2, q): first nonzero coordinate equal to 1.
fn projective_points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = vec![[0, 0, 1]];
    pts.extend((0..q).map(|y| [0, 1, y]));
    pts.extend((0..q).flat_map(|y| (0..q).map(move |z| [1, y, z])));
    pts
}

/// Point–line incidence graph of PG(2, q) for prime `q`.
///
/// Points are vertices `0..N` and lines `N..2N` with `N = q² + q + 1`; the result
/// is bipartite, `(q + 1)`-regular and has girth 6.
pub fn projective_plane_incidence(q: usize) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::Unsupported(format!(
            "projective plane incidence graphs are built over prime fields only, got q = {q}"
        )));
    }
    let pts = projective_points(q);
    let count = pts.len();
    let mut edges = Vec::new();
    for (p, a) in pts.iter().enumerate() {
        for (l, b) in pts.iter().enumerate() {
            if (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]) % q == 0 {
                edges.push((p, count + l));
            }
        }
    }
    Graph::from_edges(2 * count, edges)
}

/// Erdős–Rényi `G(n, p)`, seeded.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(i, j).expect("in range");
            }
        }
    }
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RandomC4Free {
    #[serde(skip)]
    pub graph: Graph,
    pub target_min_degree: usize,
    pub achieved_min_degree: usize,
    pub target_met: bool,
}

/// Insert edges in a seeded random order, skipping any that would close a 4-cycle,
/// until the minimum degree reaches the target or the order is exhausted.
pub fn random_c4_free(n: usize, target_min_degree: usize, seed: u64) -> RandomC4Free {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(&mut rng);
    let mut g = Graph::empty(n);
    let done = |g: &Graph| n > 0 && g.min_degree() >= target_min_degree;
    for (u, v) in pairs {
        if done(&g) {
            break;
        }
        if !closes_four_cycle(&g, u, v) {
            g.add_edge(u, v).expect("in range");
        }
    }
    let achieved = g.min_degree();
    RandomC4Free {
        graph: g,
        target_min_degree,
        achieved_min_degree: achieved,
        target_met: achieved >= target_min_degree,
    }
}

/// Would adding `uv` create a 4-cycle? Any new 4-cycle uses the edge, so it needs
/// a path `u - a - b - v` avoiding `u` and `v` in the middle.
fn closes_four_cycle(g: &Graph, u: usize, v: usize) -> bool {
    g.neighbors(u)
        .filter(|&a| a != v)
        .any(|a| g.neighbors(a).any(|b| b != u && b != v && g.adjacent(b, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Girth;

    #[test]
    fn projective_planes() {
        let h = projective_plane_incidence(2).unwrap();
        assert_eq!(h.order(), 14);
        assert!((0..14).all(|v| h.degree(v) == 3));
        assert_eq!(h.girth(), Girth::Length(6));
        let p3 = projective_plane_incidence(3).unwrap();
        assert_eq!(p3.order(), 26);
        assert!((0..26).all(|v| p3.degree(v) == 4));
        assert_eq!(p3.girth(), Girth::Length(6));
        let p5 = projective_plane_incidence(5).unwrap();
        assert!((0..62).all(|v| p5.degree(v) == 6));
        assert_eq!(p5.girth(), Girth::Length(6));
        assert!(matches!(projective_plane_incidence(4), Err(Error::Unsupported(_))));
        assert!(matches!(projective_plane_incidence(1), Err(Error::Unsupported(_))));
    }

    #[test]
    fn random_c4_free_has_no_four_cycle_and_is_deterministic() {
        let r = random_c4_free(20, 3, 7);
        assert!(!r.graph.has_four_cycle());
        assert_eq!(r, random_c4_free(20, 3, 7));
        for seed in 0..100 {
            let r = random_c4_free(8 + (seed as usize % 10), 3, seed);
            assert!(!r.graph.has_four_cycle());
            assert_eq!(r.target_met, r.graph.min_degree() >= 3);
        }
    }

    #[test]
    fn infeasible_target_is_flagged() {
        // no 4-cycle-free graph on 5 vertices has minimum degree 4
        let r = random_c4_free(5, 4, 1);
        assert!(!r.target_met);
        assert!(!r.graph.has_four_cycle());
    }

    #[test]
    fn small_families() {
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(complete_bipartite(2, 3).edge_count(), 6);
        assert_eq!(petersen().edge_count(), 15);
        assert_eq!(path(4).edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }
}

//! Simple undirected graphs stored as adjacency bitsets.

mod generators;
mod graph6;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};

pub use generators::{
    complete, complete_bipartite, cycle, path, petersen, projective_plane_incidence, random_c4_free,
    random_graph, RandomC4Free,
};
pub use graph6::{from_edge_list, from_graph6, to_edge_list, to_graph6, GRAPH6_MAX_ORDER};

/// Neighborhood rows `r_i` of a simple graph. Symmetric with an empty diagonal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    rows: Vec<BitVector>,
}

/// Length of the shortest cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Girth {
    Acyclic,
    Length(usize),
}

impl Girth {
    /// True when a 3- or 4-cycle is present.
    pub fn has_short_cycle(self) -> bool {
        matches!(self, Girth::Length(g) if g <= 4)
    }

    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Acyclic => true,
            Girth::Length(g) => g >= bound,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Acyclic => f.write_str("acyclic"),
            Girth::Length(g) => write!(f, "{g}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFacts {
    pub min_degree: usize,
    pub max_degree: usize,
    pub girth: Girth,
    pub has_four_cycle: bool,
    pub min_degree_vertices: Vec<usize>,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![BitVector::zeros(n); n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Validate rows as a symmetric, loop-free adjacency matrix.
    pub fn from_rows(rows: Vec<BitVector>) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::Dimension(format!("row {i} has length {} in a graph of order {n}", r.len())));
            }
            if r.get(i) {
                return Err(Error::Domain(format!("self-loop at vertex {i}")));
            }
            for j in r.support() {
                if !rows[j].get(i) {
                    return Err(Error::Domain(format!("asymmetric adjacency between {i} and {j}")));
                }
            }
        }
        Ok(Graph { rows })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.order();
        if u >= n || v >= n {
            return Err(Error::Dimension(format!("edge ({u}, {v}) outside a graph of order {n}")));
        }
        if u == v {
            return Err(Error::Domain(format!("self-loop at vertex {u}")));
        }
        self.rows[u].set(v, true);
        self.rows[v].set(u, true);
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Neighborhood row `r_v`.
    #[inline]
    pub fn row(&self, v: usize) -> &BitVector {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].get(v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].support()
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].weight()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitVector::weight).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.order())
            .flat_map(|u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
            .collect()
    }

    /// δ; zero for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree_vertices(&self) -> Vec<usize> {
        let delta = self.min_degree();
        (0..self.order()).filter(|&v| self.degree(v) == delta).collect()
    }

    pub fn adjacency_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(self.order(), self.rows.clone()).expect("rows have graph order")
    }

    /// First vertex pair (lexicographic) with at least two common neighbors.
    pub fn four_cycle_pair(&self) -> Option<(usize, usize)> {
        let n = self.order();
        for i in 0..n {
            for j in i + 1..n {
                let common = self.rows[i].overlap(&self.rows[j]).expect("equal lengths");
                if common >= 2 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn has_four_cycle(&self) -> bool {
        self.four_cycle_pair().is_some()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n == 0 {
            return true;
        }
        let mut seen = BitVector::zeros(n);
        seen.set(0, true);
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if !seen.get(w) {
                    seen.set(w, true);
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Shortest cycle length by breadth-first search from every vertex.
    pub fn girth(&self) -> Girth {
        let n = self.order();
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                if 2 * dist[v] >= best {
                    break;
                }
                for w in self.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        best = best.min(dist[v] + dist[w] + 1);
                    }
                }
            }
        }
        if best == usize::MAX {
            Girth::Acyclic
        } else {
            Girth::Length(best)
        }
    }

    pub fn facts(&self) -> GraphFacts {
        GraphFacts {
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            girth: self.girth(),
            has_four_cycle: self.has_four_cycle(),
            min_degree_vertices: self.min_degree_vertices(),
        }
    }

    /// Relabel vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.order();
        if perm.len() != n {
            return Err(Error::Dimension(format!("permutation of length {} for order {n}", perm.len())));
        }
        Graph::from_edges(n, self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match to_graph6(self) {
            Ok(s) => write!(f, "Graph({s})"),
            Err(_) => write!(f, "Graph(n={}, edges={:?})", self.order(), self.edges()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Common-neighbor count over all pairs, written without bitsets.
    fn has_c4_by_counting(g: &Graph) -> bool {
        let n = g.order();
        (0..n).any(|i| {
            (i + 1..n).any(|j| (0..n).filter(|&k| g.adjacent(i, k) && g.adjacent(j, k)).count() >= 2)
        })
    }

    /// Shortest cycle by enumerating simple cycles through every vertex sequence.
    fn girth_by_cycle_enumeration(g: &Graph) -> Option<usize> {
        fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, best: &mut Option<usize>) {
            let last = *path.last().unwrap();
            for w in g.neighbors(last) {
                if w == start && path.len() >= 3 {
                    let len = path.len();
                    *best = Some(best.map_or(len, |b: usize| b.min(len)));
                } else if w > start && !path.contains(&w) && best.is_none_or(|b| path.len() < b) {
                    path.push(w);
                    extend(g, start, path, best);
                    path.pop();
                }
            }
        }
        let mut best = None;
        for s in 0..g.order() {
            extend(g, s, &mut vec![s], &mut best);
        }
        best
    }

    #[test]
    fn four_cycle_examples() {
        assert!(!cycle(5).has_four_cycle());
        assert!(complete_bipartite(2, 2).has_four_cycle());
        assert!(complete(4).has_four_cycle());
        assert!(has_c4_by_counting(&complete(4)));
        assert_eq!(complete_bipartite(2, 2).four_cycle_pair(), Some((0, 1)));
    }

    #[test]
    fn girth_examples() {
        assert_eq!(complete(3).girth(), Girth::Length(3));
        assert_eq!(petersen().girth(), Girth::Length(5));
        assert_eq!(girth_by_cycle_enumeration(&petersen()), Some(5));
        assert_eq!(path(6).girth(), Girth::Acyclic);
        assert_eq!(Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap().girth(), Girth::Acyclic);
        assert_eq!(cycle(7).girth(), Girth::Length(7));
    }

    #[test]
    fn girth_and_four_cycles_match_oracles_on_random_graphs() {
        for seed in 0..200 {
            let n = 3 + (seed as usize % 7);
            let g = random_graph(n, 0.35, seed);
            assert_eq!(g.has_four_cycle(), has_c4_by_counting(&g), "{g:?}");
            let expected = girth_by_cycle_enumeration(&g).map_or(Girth::Acyclic, Girth::Length);
            assert_eq!(g.girth(), expected, "{g:?}");
            let f = g.facts();
            assert!(f.min_degree <= f.max_degree);
            // a 4-cycle subgraph exists iff some pair has two common neighbors
            assert_eq!(f.has_four_cycle, f.girth == Girth::Length(4) || has_c4_by_counting(&g));
        }
    }

    #[test]
    fn from_rows_rejects_loops_and_asymmetry() {
        let rows: Vec<BitVector> = vec!["01".parse().unwrap(), "00".parse().unwrap()];
        assert!(matches!(Graph::from_rows(rows), Err(Error::Domain(_))));
        let rows: Vec<BitVector> = vec!["10".parse().unwrap(), "00".parse().unwrap()];
        assert!(matches!(Graph::from_rows(rows), Err(Error::Domain(_))));
        assert!(Graph::from_edges(3, [(0, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 5)]).is_err());
    }

    #[test]
    fn facts_of_petersen() {
        let f = petersen().facts();
        assert_eq!((f.min_degree, f.max_degree), (3, 3));
        assert_eq!(f.min_degree_vertices, (0..10).collect::<Vec<_>>());
        assert!(!f.has_four_cycle);
    }
}

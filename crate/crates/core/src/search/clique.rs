//! Maximum clique: exact branch and bound with greedy-coloring bounds, and seeded
//! iterated greedy.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graph::Graph;
use crate::par::{self, Exec};

/// Anything with numbered vertices and a symmetric adjacency test.
pub trait AdjacencyOracle: Sync {
    fn order(&self) -> usize;
    fn adjacent(&self, a: usize, b: usize) -> bool;
}

impl AdjacencyOracle for Graph {
    fn order(&self) -> usize {
        Graph::order(self)
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        Graph::adjacent(self, a, b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliqueMethod {
    Exact,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CliqueMode {
    Exact,
    Greedy { restarts: usize, seed: u64 },
}

impl CliqueMode {
    pub fn method(self) -> CliqueMethod {
        match self {
            CliqueMode::Exact => CliqueMethod::Exact,
            CliqueMode::Greedy { .. } => CliqueMethod::Greedy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CliqueBudget {
    /// Refuse oracles with more vertices than this.
    pub max_vertices: usize,
    /// Branch-and-bound nodes before giving up.
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for CliqueBudget {
    fn default() -> Self {
        CliqueBudget {
            max_vertices: 1 << 13,
            max_nodes: 50_000_000,
            time_limit: Some(Duration::from_secs(60)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueResult {
    /// Sorted ascending.
    pub vertices: Vec<usize>,
    pub method: CliqueMethod,
    /// False when exact search stopped on budget; the clique is then the best found.
    pub complete: bool,
    pub nodes: u64,
}

pub fn max_clique<O: AdjacencyOracle>(oracle: &O, mode: CliqueMode, budget: CliqueBudget) -> Result<CliqueResult> {
    max_clique_with(oracle, mode, budget, Exec::default())
}

pub fn max_clique_with<O: AdjacencyOracle>(
    oracle: &O,
    mode: CliqueMode,
    budget: CliqueBudget,
    exec: Exec,
) -> Result<CliqueResult> {
    let n = oracle.order();
    if n > budget.max_vertices {
        return Err(Error::Budget(format!(
            "{n} vertices exceed the clique search cap of {}",
            budget.max_vertices
        )));
    }
    let adj = materialize(oracle, exec);
    let mut result = match mode {
        CliqueMode::Exact => exact(&adj, budget),
        CliqueMode::Greedy { restarts, seed } => greedy(&adj, restarts.max(1), seed, exec),
    };
    result.vertices.sort_unstable();
    Ok(result)
}

fn materialize<O: AdjacencyOracle>(oracle: &O, exec: Exec) -> Vec<BitVector> {
    let n = oracle.order();
    let rows: Vec<usize> = (0..n).collect();
    par::map_collect(exec, &rows, |&a| {
        let mut row = BitVector::zeros(n);
        for b in 0..n {
            if a != b && oracle.adjacent(a, b) {
                row.set(b, true);
            }
        }
        row
    })
}

struct Exact<'a> {
    adj: &'a [BitVector],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
    deadline: Option<Instant>,
    stopped: bool,
}

fn exact(adj: &[BitVector], budget: CliqueBudget) -> CliqueResult {
    let n = adj.len();
    let mut s = Exact {
        adj,
        best: Vec::new(),
        current: Vec::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
        deadline: budget.time_limit.map(|t| Instant::now() + t),
        stopped: false,
    };
    if n > 0 {
        s.expand(BitVector::ones(n));
    }
    CliqueResult {
        vertices: s.best,
        method: CliqueMethod::Exact,
        complete: !s.stopped,
        nodes: s.nodes,
    }
}

impl Exact<'_> {
    /// Greedy sequential coloring of `p` in ascending vertex order. Returns the
    /// vertices in color order with the color count reached at each.
    fn color(&self, p: &BitVector) -> Vec<(usize, usize)> {
        let mut order = Vec::with_capacity(p.weight());
        let mut uncolored = p.clone();
        let mut k = 0;
        while !uncolored.is_zero() {
            k += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.support().next() {
                q.set(v, false);
                uncolored.set(v, false);
                // the rest of this color class must avoid v's neighbors
                let masked: Vec<u64> = q.words().iter().zip(self.adj[v].words()).map(|(x, a)| x & !a).collect();
                q = BitVector::from_words(q.len(), masked);
                order.push((v, k));
            }
        }
        order
    }

    fn out_of_budget(&mut self) -> bool {
        if self.stopped {
            return true;
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.stopped = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.deadline {
                self.stopped = Instant::now() >= d;
            }
        }
        self.stopped
    }

    fn expand(&mut self, mut p: BitVector) {
        if self.out_of_budget() {
            return;
        }
        let order = self.color(&p);
        for &(v, k) in order.iter().rev() {
            if self.current.len() + k <= self.best.len() {
                return;
            }
            self.current.push(v);
            let next = p.and(&self.adj[v]).expect("one length");
            if next.is_zero() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(next);
            }
            self.current.pop();
            p.set(v, false);
            if self.stopped {
                return;
            }
        }
    }
}

fn greedy_pass(adj: &[BitVector], order: &[usize]) -> Vec<usize> {
    let mut clique: Vec<usize> = Vec::new();
    for &v in order {
        if clique.iter().all(|&c| adj[c].get(v)) {
            clique.push(v);
        }
    }
    clique
}

/// Restart 0 scans vertices in ascending order; restart `r` uses a ChaCha8
/// shuffle seeded by `seed + r`. The largest clique wins, earliest restart on ties.
fn greedy(adj: &[BitVector], restarts: usize, seed: u64, exec: Exec) -> CliqueResult {
    let n = adj.len();
    let runs: Vec<u64> = (0..restarts as u64).collect();
    let cliques = par::map_collect(exec, &runs, |&r| {
        let mut order: Vec<usize> = (0..n).collect();
        if r > 0 {
            order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed.wrapping_add(r)));
        }
        greedy_pass(adj, &order)
    });
    let mut best: Vec<usize> = Vec::new();
    for c in cliques {
        if c.len() > best.len() {
            best = c;
        }
    }
    CliqueResult {
        vertices: best,
        method: CliqueMethod::Greedy,
        complete: true,
        nodes: restarts as u64,
    }
}

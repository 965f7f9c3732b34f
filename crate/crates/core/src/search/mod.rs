//! Nondegenerate code search: `x ~ y` in the compatibility graph when `x ⊕ y` is not
//! the `Cl_S` image of any error lighter than `d`; cliques are CWS codes of
//! distance at least `d`.

mod clique;

use std::collections::HashSet;

use serde::Serialize;

use crate::cws::{classical_distance, distance_with, ClassicalCode, CwsCode, DistanceResult};
use crate::diagdist::{self, cls_map_into};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graph::{self, Graph};
use crate::par::{self, Exec};
use crate::pauli::paulis_on_support;
use crate::subsets::Combinations;

pub use clique::{
    max_clique, max_clique_with, AdjacencyOracle, CliqueBudget, CliqueMethod, CliqueMode, CliqueResult,
};

/// Largest order for which the compatibility graph is built.
pub const DEFAULT_COMPAT_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClsImageSet {
    pub d: usize,
    pub images: HashSet<BitVector>,
}

impl ClsImageSet {
    pub fn contains(&self, s: &BitVector) -> bool {
        self.images.contains(s)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }
}

pub fn cls_image_set(g: &Graph, d: usize) -> Result<ClsImageSet> {
    cls_image_set_with(g, d, Exec::default())
}

/// `{Cl_S(E) : 0 < wt(E) < d}`, one parallel task per error support.
pub fn cls_image_set_with(g: &Graph, d: usize, exec: Exec) -> Result<ClsImageSet> {
    let n = g.order();
    if d == 0 || d > n {
        return Err(Error::Contract(format!("target distance {d} outside 1..={n}")));
    }
    let supports: Vec<Vec<usize>> = (1..d).flat_map(|w| Combinations::new(n, w)).collect();
    let chunks = par::map_collect(exec, &supports, |s| {
        let mut out = Vec::new();
        let mut image = BitVector::zeros(n);
        for e in paulis_on_support(n, s) {
            cls_map_into(g, &e, &mut image);
            out.push(image.clone());
        }
        out
    });
    Ok(ClsImageSet {
        d,
        images: chunks.into_iter().flatten().collect(),
    })
}

/// The Cayley graph on `{0,1}^n` with connection set the complement of the image
/// set. Adjacency is a table lookup on `x ⊕ y`; no edges are stored.
#[derive(Debug, Clone)]
pub struct CompatibilityGraph {
    n: usize,
    d: usize,
    diag_distance: usize,
    /// Indexed by the bitstring's integer value (bit `i` = coordinate `i`).
    forbidden: Vec<bool>,
}

impl CompatibilityGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn diag_distance(&self) -> usize {
        self.diag_distance
    }

    pub fn is_forbidden(&self, s: u64) -> bool {
        self.forbidden[s as usize]
    }

    pub fn compatible(&self, x: u64, y: u64) -> bool {
        x != y && !self.forbidden[(x ^ y) as usize]
    }

    /// Nonzero words compatible with the zero word.
    pub fn neighbors_of_zero(&self) -> Vec<u64> {
        (1..1u64 << self.n).filter(|&x| !self.forbidden[x as usize]).collect()
    }
}

impl AdjacencyOracle for CompatibilityGraph {
    fn order(&self) -> usize {
        1 << self.n
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.compatible(a as u64, b as u64)
    }
}

pub fn compatibility_graph(g: &Graph, d: usize) -> Result<CompatibilityGraph> {
    compatibility_graph_with(g, d, DEFAULT_COMPAT_CAP, Exec::default())
}

pub fn compatibility_graph_with(g: &Graph, d: usize, max_n: usize, exec: Exec) -> Result<CompatibilityGraph> {
    let n = g.order();
    if n > max_n.min(32) {
        return Err(Error::Budget(format!(
            "compatibility graph on 2^{n} vertices exceeds the cap of 2^{}",
            max_n.min(32)
        )));
    }
    let diag = diagdist::diagonal_distance_with(g, exec)?.value;
    if d > diag {
        return Err(Error::Domain(format!(
            "target distance {d} exceeds Δ′ = {diag}; only nondegenerate codes are searched"
        )));
    }
    let images = cls_image_set_with(g, d, exec)?;
    let mut forbidden = vec![false; 1 << n];
    for s in &images.images {
        forbidden[s.to_u64().expect("n ≤ 32") as usize] = true;
    }
    Ok(CompatibilityGraph {
        n,
        d,
        diag_distance: diag,
        forbidden,
    })
}

/// The compatibility graph restricted to the neighbors of zero.
struct ZeroNeighborhood<'a> {
    cg: &'a CompatibilityGraph,
    vertices: Vec<u64>,
}

impl AdjacencyOracle for ZeroNeighborhood<'_> {
    fn order(&self) -> usize {
        self.vertices.len()
    }

    fn adjacent(&self, a: usize, b: usize) -> bool {
        self.cg.compatible(self.vertices[a], self.vertices[b])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub graph6: String,
    pub words: Vec<BitVector>,
    pub requested_d: usize,
    pub diag_distance: usize,
    pub verified_d: DistanceResult,
    pub clique_method: CliqueMethod,
    pub complete: bool,
}

impl SearchResult {
    pub fn k(&self) -> usize {
        self.words.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: CliqueMode,
    pub budget: CliqueBudget,
    pub max_n: usize,
    pub exec: Exec,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: CliqueMode::Exact,
            budget: CliqueBudget::default(),
            max_n: DEFAULT_COMPAT_CAP,
            exec: Exec::default(),
        }
    }
}

pub fn search_code(g: &Graph, d: usize, mode: CliqueMode) -> Result<SearchResult> {
    search_code_with(
        g,
        d,
        SearchOptions {
            mode,
            ..SearchOptions::default()
        },
    )
}

/// The zero word is fixed (translation invariance), the clique is sought among its
/// neighbors, and the resulting code's distance is enumerated up to weight `d`.
pub fn search_code_with(g: &Graph, d: usize, opts: SearchOptions) -> Result<SearchResult> {
    let n = g.order();
    let cg = compatibility_graph_with(g, d, opts.max_n, opts.exec)?;
    let hood = ZeroNeighborhood {
        cg: &cg,
        vertices: cg.neighbors_of_zero(),
    };
    let found = clique::max_clique_with(&hood, opts.mode, opts.budget, opts.exec)?;
    let mut words = vec![BitVector::zeros(n)];
    words.extend(found.vertices.iter().map(|&i| BitVector::from_u64(n, hood.vertices[i])));
    let code = CwsCode::new(g.clone(), ClassicalCode::explicit(words.clone())?)?;
    let verified_d = distance_with(&code, d.min(n), opts.exec)?;
    Ok(SearchResult {
        graph6: graph::to_graph6(g)?,
        words,
        requested_d: d,
        diag_distance: cg.diag_distance,
        verified_d,
        clique_method: found.method,
        complete: found.complete,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SqrtGuarantee {
    pub q: usize,
    pub n: usize,
    /// δ = δ_max = q + 1.
    pub delta: usize,
    pub delta_max: usize,
    /// (δ + 1) · δ_max, which the classical distance must exceed.
    pub required_above: usize,
    pub classical_distance: usize,
    /// Girth 6 forces Δ′ = δ + 1.
    pub diag_distance: usize,
    /// Every error of weight at most δ is detected.
    pub distance_at_least: usize,
}

#[derive(Debug, Clone)]
pub struct SqrtFamily {
    pub code: CwsCode,
    pub guarantee: SqrtGuarantee,
}

/// A CWS code on the PG(2, q) incidence graph whose classical code has distance
/// above `(δ + 1)δ_max`. An error of weight at most δ has a `Cl_S` image of weight
/// at most `δ + δ·δ_max`, which is nonzero because it is lighter than Δ′ and short
/// of every codeword difference.
pub fn construct_sqrt_family(q: usize, code: ClassicalCode) -> Result<SqrtFamily> {
    let g = graph::projective_plane_incidence(q)?;
    let n = g.order();
    if code.length() != n {
        return Err(Error::Dimension(format!(
            "PG(2, {q}) incidence graph has {n} vertices, code has length {}",
            code.length()
        )));
    }
    let delta = q + 1;
    let delta_max = g.max_degree();
    debug_assert_eq!(g.min_degree(), delta);
    let required_above = (delta + 1) * delta_max;
    let dc = classical_distance(&code)?;
    if dc <= required_above {
        return Err(Error::Domain(format!(
            "classical distance {dc} must exceed (δ + 1)·δ_max = {required_above}"
        )));
    }
    let guarantee = SqrtGuarantee {
        q,
        n,
        delta,
        delta_max,
        required_above,
        classical_distance: dc,
        diag_distance: delta + 1,
        distance_at_least: delta + 1,
    };
    Ok(SqrtFamily {
        code: CwsCode::new(g, code)?,
        guarantee,
    })
}

//! Column systems of `(I | A_G)` and the combinatorics around them: Property A,
//! the degree gap, the five-way classification of zero-sum column sets, and the
//! search for the vertex set V′ that pins Δ′ = δ.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graph::Graph;
use crate::subsets::Combinations;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ColumnOrigin {
    /// `e_j`, column `j` of the identity block.
    Identity(usize),
    /// `A_j`, column `j` of the adjacency block.
    Adjacency(usize),
    Free,
}

impl fmt::Display for ColumnOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnOrigin::Identity(j) => write!(f, "e{j}"),
            ColumnOrigin::Adjacency(j) => write!(f, "a{j}"),
            ColumnOrigin::Free => f.write_str("col"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColumnSystem {
    len: usize,
    columns: Vec<BitVector>,
    origin: Vec<ColumnOrigin>,
}

impl ColumnSystem {
    /// The `2n` columns of `(I | A_G)`: `e_0..e_{n-1}` at indices `0..n`, then
    /// `a_0..a_{n-1}` at `n..2n`.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.order();
        let mut columns: Vec<BitVector> = (0..n).map(|j| BitVector::unit(n, j)).collect();
        // A_G is symmetric, so column j is row j
        columns.extend(g.rows().iter().cloned());
        let origin = (0..n)
            .map(ColumnOrigin::Identity)
            .chain((0..n).map(ColumnOrigin::Adjacency))
            .collect();
        ColumnSystem { len: n, columns, origin }
    }

    pub fn from_columns(columns: Vec<BitVector>) -> Result<Self> {
        let len = columns.first().map_or(0, BitVector::len);
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::Dimension("columns of a system must share one length".into()));
        }
        let origin = vec![ColumnOrigin::Free; columns.len()];
        Ok(ColumnSystem { len, columns, origin })
    }

    pub fn column_len(&self) -> usize {
        self.len
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn columns(&self) -> &[BitVector] {
        &self.columns
    }

    pub fn column(&self, i: usize) -> &BitVector {
        &self.columns[i]
    }

    pub fn origin(&self, i: usize) -> ColumnOrigin {
        self.origin[i]
    }

    /// Index of `e_j` or `a_j` in a graph-built system.
    pub fn identity_index(&self, j: usize) -> usize {
        j
    }

    pub fn adjacency_index(&self, j: usize) -> usize {
        self.len + j
    }

    pub fn label(&self, i: usize) -> String {
        match self.origin[i] {
            ColumnOrigin::Free => format!("col{i}"),
            o => o.to_string(),
        }
    }

    fn sum(&self, gamma: &[usize]) -> BitVector {
        let mut acc = BitVector::zeros(self.len);
        for &i in gamma {
            acc.xor_words(self.columns[i].words());
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyA {
    pub holds: bool,
    /// First pair (lexicographic) sharing two or more support coordinates.
    pub violation: Option<(usize, usize)>,
}

/// Every two distinct columns share at most one support coordinate.
pub fn property_a_check(sys: &ColumnSystem) -> PropertyA {
    let m = sys.len();
    for i in 0..m {
        for j in i + 1..m {
            if sys.columns[i].overlap(&sys.columns[j]).expect("one length") > 1 {
                return PropertyA {
                    holds: false,
                    violation: Some((i, j)),
                };
            }
        }
    }
    PropertyA {
        holds: true,
        violation: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DegreeGap {
    Gap(usize),
    Undefined(String),
}

impl DegreeGap {
    pub fn value(&self) -> Option<usize> {
        match self {
            DegreeGap::Gap(d) => Some(*d),
            DegreeGap::Undefined(_) => None,
        }
    }
}

/// The δ ≥ 2 for which every column has weight 1 or at least δ, δ attained.
pub fn degree_gap(sys: &ColumnSystem) -> DegreeGap {
    let weights: Vec<usize> = sys.columns.iter().map(BitVector::weight).collect();
    if let Some(i) = weights.iter().position(|&w| w == 0) {
        return DegreeGap::Undefined(format!("column {} is zero", sys.label(i)));
    }
    match weights.iter().copied().filter(|&w| w > 1).min() {
        Some(d) => DegreeGap::Gap(d),
        None => DegreeGap::Undefined("no column of weight above one".into()),
    }
}

/// Check a declared gap `delta` against the weight profile.
pub fn degree_gap_at(sys: &ColumnSystem, delta: usize) -> DegreeGap {
    if delta < 2 {
        return DegreeGap::Undefined(format!("a degree gap must be at least 2, got {delta}"));
    }
    for (i, c) in sys.columns.iter().enumerate() {
        let w = c.weight();
        if w != 1 && w < delta {
            return DegreeGap::Undefined(format!(
                "column {} has weight {w}, neither 1 nor at least {delta}",
                sys.label(i)
            ));
        }
    }
    if !sys.columns.iter().any(|c| c.weight() == delta) {
        return DegreeGap::Undefined(format!("no column has weight exactly {delta}"));
    }
    DegreeGap::Gap(delta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GammaCondition {
    #[serde(rename = "O")]
    Empty,
    #[serde(rename = "A.1")]
    ManyLight,
    #[serde(rename = "A.2")]
    ManyHeavy,
    #[serde(rename = "B")]
    Balanced,
    #[serde(rename = "C")]
    Star,
}

impl fmt::Display for GammaCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaCondition::Empty => "O",
            GammaCondition::ManyLight => "A.1",
            GammaCondition::ManyHeavy => "A.2",
            GammaCondition::Balanced => "B",
            GammaCondition::Star => "C",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaClassification {
    pub gamma: Vec<usize>,
    pub delta: usize,
    pub conditions: Vec<GammaCondition>,
    /// Weight-one members.
    pub gamma1_size: usize,
    /// Members of weight above one.
    pub gamma_delta_size: usize,
}

/// Classify a zero-sum Γ using the system's own degree gap.
pub fn classify_gamma(sys: &ColumnSystem, gamma: &[usize]) -> Result<GammaClassification> {
    match degree_gap(sys) {
        DegreeGap::Gap(delta) => classify_gamma_with_gap(sys, gamma, delta),
        DegreeGap::Undefined(reason) => Err(Error::Domain(format!("degree gap undefined: {reason}"))),
    }
}

/// Evaluate conditions O, A.1, A.2, B and C literally for a zero-sum Γ.
pub fn classify_gamma_with_gap(sys: &ColumnSystem, gamma: &[usize], delta: usize) -> Result<GammaClassification> {
    let mut sorted = gamma.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != gamma.len() {
        return Err(Error::Contract("Γ lists a column twice".into()));
    }
    if let Some(&bad) = sorted.iter().find(|&&i| i >= sys.len()) {
        return Err(Error::Contract(format!("column index {bad} outside a system of {}", sys.len())));
    }
    if !sys.sum(&sorted).is_zero() {
        return Err(Error::Contract("Γ does not sum to zero".into()));
    }
    let light: Vec<usize> = sorted.iter().copied().filter(|&i| sys.columns[i].weight() == 1).collect();
    let heavy: Vec<usize> = sorted.iter().copied().filter(|&i| sys.columns[i].weight() > 1).collect();
    let mut conditions = Vec::new();
    if sorted.is_empty() {
        conditions.push(GammaCondition::Empty);
    }
    if light.len() > delta {
        conditions.push(GammaCondition::ManyLight);
    }
    if heavy.len() > delta {
        conditions.push(GammaCondition::ManyHeavy);
    }
    if sorted.len() == 2 * delta && light.len() == delta && heavy.len() == delta {
        conditions.push(GammaCondition::Balanced);
    }
    if is_star(sys, &sorted, delta) {
        conditions.push(GammaCondition::Star);
    }
    Ok(GammaClassification {
        gamma: sorted,
        delta,
        conditions,
        gamma1_size: light.len(),
        gamma_delta_size: heavy.len(),
    })
}

/// Γ = S ∪ E(S) for a member S of weight δ: the other members are exactly the unit
/// vectors on supp(S).
fn is_star(sys: &ColumnSystem, gamma: &[usize], delta: usize) -> bool {
    if gamma.len() != delta + 1 {
        return false;
    }
    gamma.iter().any(|&s| {
        let col = &sys.columns[s];
        if col.weight() != delta {
            return false;
        }
        let mut rest: Vec<BitVector> = gamma
            .iter()
            .filter(|&&i| i != s)
            .map(|&i| sys.columns[i].clone())
            .collect();
        let mut expected: Vec<BitVector> = col.support().map(|j| BitVector::unit(sys.len, j)).collect();
        rest.sort_by_key(|v| v.support().next());
        expected.sort_by_key(|v| v.support().next());
        rest == expected
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroSumBudget {
    /// Refuse systems wider than this.
    pub max_columns: usize,
    /// Partial sums held per half.
    pub max_partial: usize,
    pub max_results: usize,
}

impl Default for ZeroSumBudget {
    fn default() -> Self {
        ZeroSumBudget {
            max_columns: 64,
            max_partial: 1 << 22,
            max_results: 1 << 20,
        }
    }
}

pub fn enumerate_zero_sum_subsets(sys: &ColumnSystem, max_size: usize) -> Result<Vec<Vec<usize>>> {
    enumerate_zero_sum_subsets_with(sys, max_size, ZeroSumBudget::default())
}

/// Every nonempty set of at most `max_size` columns summing to zero, sorted by size
/// then lexicographically. Meet in the middle: partial sums of the left half are
/// hashed and matched against partial sums of the right half.
pub fn enumerate_zero_sum_subsets_with(
    sys: &ColumnSystem,
    max_size: usize,
    budget: ZeroSumBudget,
) -> Result<Vec<Vec<usize>>> {
    let m = sys.len();
    if m > budget.max_columns {
        return Err(Error::Budget(format!(
            "{m} columns exceed the zero-sum enumeration cap of {}",
            budget.max_columns
        )));
    }
    let split = m / 2;
    let halves = [(0..split).collect::<Vec<_>>(), (split..m).collect::<Vec<_>>()];
    let partials = |cols: &[usize]| -> Result<Vec<(Vec<usize>, BitVector)>> {
        let mut out = Vec::new();
        for k in 0..=max_size.min(cols.len()) {
            for pick in Combinations::new(cols.len(), k) {
                if out.len() >= budget.max_partial {
                    return Err(Error::Budget(format!(
                        "more than {} partial sums; enumeration stopped before completion",
                        budget.max_partial
                    )));
                }
                let set: Vec<usize> = pick.iter().map(|&p| cols[p]).collect();
                let s = sys.sum(&set);
                out.push((set, s));
            }
        }
        Ok(out)
    };
    let left = partials(&halves[0])?;
    let right = partials(&halves[1])?;
    let mut by_sum: HashMap<&BitVector, Vec<&Vec<usize>>> = HashMap::new();
    for (set, s) in &left {
        by_sum.entry(s).or_default().push(set);
    }
    let mut found = Vec::new();
    for (rset, s) in &right {
        let Some(lsets) = by_sum.get(s) else { continue };
        for lset in lsets {
            let size = lset.len() + rset.len();
            if size == 0 || size > max_size {
                continue;
            }
            if found.len() >= budget.max_results {
                return Err(Error::Budget(format!(
                    "more than {} zero-sum subsets; enumeration stopped before completion",
                    budget.max_results
                )));
            }
            let mut full: Vec<usize> = lset.iter().chain(rset.iter()).copied().collect();
            full.sort_unstable();
            found.push(full);
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Midpoint {
    pub a: usize,
    pub b: usize,
    pub via: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndCorCertificate {
    pub delta: usize,
    pub v_prime: Vec<usize>,
    /// `(v, w)`: `w` is the unique neighbor of `v` inside V′.
    pub pairings: Vec<(usize, usize)>,
    /// For each pair of V′ the common neighbor closing the length-2 path.
    pub midpoints: Vec<Midpoint>,
}

fn require_theorem_a_domain(g: &Graph) -> Result<()> {
    if let Some((i, j)) = g.four_cycle_pair() {
        return Err(Error::Domain(format!(
            "graph has a 4-cycle (vertices {i} and {j} share two neighbors)"
        )));
    }
    let delta = g.min_degree();
    if delta < 2 {
        return Err(Error::Domain(format!("minimum degree is {delta}, need at least 2")));
    }
    Ok(())
}

/// Check a candidate V′ against all three conditions; the certificate on success,
/// the first failed condition otherwise.
pub fn check_end_cor_conditions(g: &Graph, v_prime: &[usize]) -> std::result::Result<EndCorCertificate, String> {
    let delta = g.min_degree();
    let mut vs = v_prime.to_vec();
    vs.sort_unstable();
    vs.dedup();
    if vs.len() != delta {
        return Err(format!("V′ has {} distinct vertices, need δ = {delta}", vs.len()));
    }
    if !delta.is_multiple_of(2) {
        return Err(format!("δ = {delta} is odd"));
    }
    if let Some(&v) = vs.iter().find(|&&v| g.degree(v) != delta) {
        return Err(format!("vertex {v} has degree {}, not δ", g.degree(v)));
    }
    let mut pairings = Vec::with_capacity(vs.len());
    for &v in &vs {
        let inside: Vec<usize> = vs.iter().copied().filter(|&w| g.adjacent(v, w)).collect();
        if inside.len() != 1 {
            return Err(format!("vertex {v} has {} neighbors inside V′", inside.len()));
        }
        pairings.push((v, inside[0]));
    }
    let mut midpoints = Vec::new();
    let mut used_edges = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            let Some(via) = g.neighbors(a).find(|&w| g.adjacent(w, b)) else {
                return Err(format!("no path of length two between {a} and {b}"));
            };
            for edge in [(a.min(via), a.max(via)), (b.min(via), b.max(via))] {
                if used_edges.contains(&edge) {
                    return Err(format!("edge {edge:?} lies on two of the length-two paths"));
                }
                used_edges.push(edge);
            }
            midpoints.push(Midpoint { a, b, via });
        }
    }
    Ok(EndCorCertificate {
        delta,
        v_prime: vs,
        pairings,
        midpoints,
    })
}

/// Search for V′ among minimum-degree vertices. V′ splits into adjacent pairs, so
/// candidates are assembled from such pairs in lexicographic order; the first set
/// passing [`check_end_cor_conditions`] is returned.
pub fn end_cor_certificate(g: &Graph) -> Result<Option<EndCorCertificate>> {
    require_theorem_a_domain(g)?;
    let delta = g.min_degree();
    if !delta.is_multiple_of(2) {
        return Ok(None);
    }
    let low: Vec<usize> = g.min_degree_vertices();
    let common = |a: usize, b: usize| g.row(a).overlap(g.row(b)).expect("one length") > 0;
    // adjacent degree-δ pairs closing a triangle
    let pairs: Vec<(usize, usize)> = low
        .iter()
        .enumerate()
        .flat_map(|(i, &a)| low[i + 1..].iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| g.adjacent(a, b) && common(a, b))
        .collect();
    let compatible = |p: (usize, usize), q: (usize, usize)| {
        let (xs, ys) = ([p.0, p.1], [q.0, q.1]);
        xs.iter().all(|&x| ys.iter().all(|&y| x != y && !g.adjacent(x, y) && common(x, y)))
    };
    let mut chosen: Vec<usize> = Vec::new();
    let mut result = None;
    search_pairs(&pairs, delta / 2, 0, &mut chosen, &compatible, &mut |sel| {
        let vs: Vec<usize> = sel.iter().flat_map(|&k| [pairs[k].0, pairs[k].1]).collect();
        match check_end_cor_conditions(g, &vs) {
            Ok(cert) => {
                result = Some(cert);
                true
            }
            Err(_) => false,
        }
    });
    Ok(result)
}

fn search_pairs<C, F>(pairs: &[(usize, usize)], need: usize, start: usize, chosen: &mut Vec<usize>, compatible: &C, accept: &mut F) -> bool
where
    C: Fn((usize, usize), (usize, usize)) -> bool,
    F: FnMut(&[usize]) -> bool,
{
    if chosen.len() == need {
        return accept(chosen);
    }
    for k in start..pairs.len() {
        if pairs.len() - k < need - chosen.len() {
            break;
        }
        if chosen.iter().all(|&c| compatible(pairs[c], pairs[k])) {
            chosen.push(k);
            if search_pairs(pairs, need, k + 1, chosen, compatible, accept) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Brute force over every δ-subset of minimum-degree vertices.
pub fn end_cor_certificate_exhaustive(g: &Graph) -> Result<Option<EndCorCertificate>> {
    require_theorem_a_domain(g)?;
    let delta = g.min_degree();
    let low = g.min_degree_vertices();
    for pick in Combinations::new(low.len(), delta) {
        let vs: Vec<usize> = pick.iter().map(|&i| low[i]).collect();
        if let Ok(cert) = check_end_cor_conditions(g, &vs) {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

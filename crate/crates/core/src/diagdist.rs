//! The error-transfer map `Cl_S` and the diagonal distance Δ′ of a graph.
//!
//! `Cl_S(Z(v)X(u)) = v ⊕ Σ_{i ∈ supp(u)} r_i`, so the errors that vanish under it
//! are exactly `(A_G u | u)` for `u ≠ 0`, and
//! Δ′(G) = min over nonzero `u` of `|supp(u) ∪ supp(A_G u)|`.
//!
//! Three routes compute Δ′:
//! - [`diagonal_distance`] enumerates `u` by increasing Hamming weight and stops once
//!   the weight reaches the incumbent (symplectic weight is at least `wt(u)`);
//! - [`oracle_diagonal_distance`] scans all `2^n - 1` vectors with no pruning;
//! - [`theorem_a_value`] applies the δ / δ+1 dichotomy for 4-cycle-free graphs and
//!   only searches for a V′ certificate.
//!
//! Witnesses are canonical: among minimizing `u`, the smallest Hamming weight wins,
//! then the lexicographically smallest support. The first two routes therefore
//! return identical results.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graph::Graph;
use crate::par::{self, Exec};
use crate::pauli::PauliVector;
use crate::structure;

/// Largest order the unpruned oracle accepts by default.
pub const DEFAULT_ORACLE_CAP: usize = 24;

/// Beyond this the lookup tables alone outgrow memory.
const ORACLE_HARD_LIMIT: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagMethod {
    ExactSearch,
    Oracle,
    TheoremAFastPath,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagDistanceResult {
    pub value: usize,
    pub witness_u: BitVector,
    pub witness_pauli: PauliVector,
    pub method: DiagMethod,
}

impl DiagDistanceResult {
    fn from_witness(g: &Graph, u: BitVector, method: DiagMethod) -> Self {
        let z = x_image(g, &u);
        let witness_pauli = PauliVector::new(z, u.clone()).expect("lengths agree");
        DiagDistanceResult {
            value: witness_pauli.symplectic_weight(),
            witness_u: u,
            witness_pauli,
            method,
        }
    }
}

/// `Σ_{i ∈ supp(u)} r_i`, i.e. `A_G u`.
fn x_image(g: &Graph, u: &BitVector) -> BitVector {
    let mut acc = BitVector::zeros(g.order());
    for i in u.support() {
        acc.xor_words(g.row(i).words());
    }
    acc
}

pub fn cls_map(g: &Graph, e: &PauliVector) -> Result<BitVector> {
    if e.num_qubits() != g.order() {
        return Err(Error::Dimension(format!(
            "{}-qubit error on a graph of order {}",
            e.num_qubits(),
            g.order()
        )));
    }
    let mut out = e.z_part().clone();
    for i in e.x_part().support() {
        out.xor_words(g.row(i).words());
    }
    Ok(out)
}

/// Allocation-free `Cl_S` for hot loops; `out` must have the graph's length.
pub(crate) fn cls_map_into(g: &Graph, e: &PauliVector, out: &mut BitVector) {
    out.clone_from(e.z_part());
    for i in e.x_part().support() {
        out.xor_words(g.row(i).words());
    }
}

fn union_weight(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x | y).count_ones() as usize).sum()
}

/// Best candidate of one search level: symplectic weight and the support of `u`.
type Candidate = Option<(usize, Vec<usize>)>;

fn better(a: Candidate, b: Candidate) -> Candidate {
    match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => {
            // equal-length supports within one level, so Vec's lexicographic order
            // is the canonical tie-break
            if (a.0, &a.1) <= (b.0, &b.1) {
                Some(a)
            } else {
                Some(b)
            }
        }
    }
}

struct LevelSearch<'a> {
    g: &'a Graph,
    n: usize,
    words: usize,
}

impl LevelSearch<'_> {
    /// Best `u` of Hamming weight `w` whose smallest index is `first`.
    fn best_with_first(&self, w: usize, first: usize) -> Candidate {
        if first + w > self.n {
            return None;
        }
        let mut zs = vec![vec![0u64; self.words]; w + 1];
        let mut us = vec![vec![0u64; self.words]; w + 1];
        let mut picked = Vec::with_capacity(w);
        let mut best: Candidate = None;
        self.push(first, 0, &mut zs, &mut us, &mut picked);
        self.dfs(w, 1, first + 1, &mut zs, &mut us, &mut picked, &mut best);
        best
    }

    fn push(&self, v: usize, depth: usize, zs: &mut [Vec<u64>], us: &mut [Vec<u64>], picked: &mut Vec<usize>) {
        let (lo, hi) = zs.split_at_mut(depth + 1);
        hi[0].copy_from_slice(&lo[depth]);
        for (a, b) in hi[0].iter_mut().zip(self.g.row(v).words()) {
            *a ^= b;
        }
        let (lo, hi) = us.split_at_mut(depth + 1);
        hi[0].copy_from_slice(&lo[depth]);
        hi[0][v / 64] |= 1u64 << (v % 64);
        picked.push(v);
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &self,
        w: usize,
        depth: usize,
        start: usize,
        zs: &mut [Vec<u64>],
        us: &mut [Vec<u64>],
        picked: &mut Vec<usize>,
        best: &mut Candidate,
    ) {
        if depth == w {
            let wt = union_weight(&zs[w], &us[w]);
            if best.as_ref().is_none_or(|b| wt < b.0) {
                *best = Some((wt, picked.clone()));
            }
            return;
        }
        let remaining = w - depth;
        for v in start..=self.n - remaining {
            self.push(v, depth, zs, us, picked);
            self.dfs(w, depth + 1, v + 1, zs, us, picked, best);
            picked.pop();
        }
    }
}

pub fn diagonal_distance(g: &Graph) -> Result<DiagDistanceResult> {
    diagonal_distance_with(g, Exec::default())
}

/// Pruned exact search over `u` by increasing Hamming weight.
pub fn diagonal_distance_with(g: &Graph, exec: Exec) -> Result<DiagDistanceResult> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Domain("diagonal distance of the empty graph is undefined".into()));
    }
    let search = LevelSearch {
        g,
        n,
        words: n.div_ceil(64),
    };
    let mut best: Candidate = None;
    for w in 1..=n {
        if best.as_ref().is_some_and(|b| b.0 <= w) {
            break;
        }
        let level = par::map_reduce(exec, n, None, |first| search.best_with_first(w, first), better);
        if let Some(found) = level {
            if best.as_ref().is_none_or(|b| found.0 < b.0) {
                best = Some(found);
            }
        }
    }
    let (_, support) = best.expect("u = e_0 always yields a candidate");
    let u = BitVector::from_indices(n, support).expect("indices below n");
    Ok(DiagDistanceResult::from_witness(g, u, DiagMethod::ExactSearch))
}

/// Canonical order on `(symplectic weight, u)` for single-word masks.
fn mask_key_cmp(a: (usize, u64), b: (usize, u64)) -> Ordering {
    a.0.cmp(&b.0)
        .then(a.1.count_ones().cmp(&b.1.count_ones()))
        .then_with(|| {
            let diff = a.1 ^ b.1;
            if diff == 0 {
                Ordering::Equal
            } else if a.1 & diff & diff.wrapping_neg() != 0 {
                // the lowest differing index belongs to a
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
}

pub fn oracle_diagonal_distance(g: &Graph) -> Result<DiagDistanceResult> {
    oracle_diagonal_distance_with(g, DEFAULT_ORACLE_CAP, Exec::default())
}

/// Unpruned scan of every nonzero `u`, for cross-validation. Refuses graphs above
/// `cap` vertices.
pub fn oracle_diagonal_distance_with(g: &Graph, cap: usize, exec: Exec) -> Result<DiagDistanceResult> {
    let n = g.order();
    if n == 0 {
        return Err(Error::Domain("diagonal distance of the empty graph is undefined".into()));
    }
    let cap = cap.min(ORACLE_HARD_LIMIT);
    if n > cap {
        return Err(Error::Budget(format!(
            "oracle enumerates 2^{n} vectors; order {n} exceeds the cap of {cap}"
        )));
    }
    let rows: Vec<u64> = (0..n).map(|i| g.row(i).to_u64().expect("n <= 64")).collect();
    let lo_bits = n.min(12);
    let span = |bits: std::ops::Range<usize>| -> Vec<u64> {
        let width = bits.len();
        let mut table = vec![0u64; 1 << width];
        for m in 1..table.len() {
            let low = m.trailing_zeros() as usize;
            table[m] = table[m & (m - 1)] ^ rows[bits.start + low];
        }
        table
    };
    let lo_table = span(0..lo_bits);
    let hi_table = span(lo_bits..n);
    let merge = |a: Option<(usize, u64)>, b: Option<(usize, u64)>| match (a, b) {
        (None, b) => b,
        (a, None) => a,
        (Some(a), Some(b)) => Some(if mask_key_cmp(a, b) != Ordering::Greater { a } else { b }),
    };
    let best = par::map_reduce(
        exec,
        hi_table.len(),
        None,
        |hi| {
            let mut best: Option<(usize, u64)> = None;
            for (lo, &zlo) in lo_table.iter().enumerate() {
                let u = ((hi as u64) << lo_bits) | lo as u64;
                if u == 0 {
                    continue;
                }
                let z = zlo ^ hi_table[hi];
                let cand = ((z | u).count_ones() as usize, u);
                best = merge(best, Some(cand));
            }
            best
        },
        merge,
    );
    let (_, mask) = best.expect("n >= 1");
    let u = BitVector::from_u64(n, mask);
    Ok(DiagDistanceResult::from_witness(g, u, DiagMethod::Oracle))
}

/// Δ′ for a 4-cycle-free graph with δ ≥ 2: δ when a V′ certificate exists,
/// δ + 1 otherwise.
pub fn theorem_a_value(g: &Graph) -> Result<DiagDistanceResult> {
    let delta = g.min_degree();
    let certificate = structure::end_cor_certificate(g)?;
    let u = match certificate {
        Some(cert) => BitVector::from_indices(g.order(), cert.v_prime.iter().copied())?,
        None => {
            let v = g.min_degree_vertices()[0];
            BitVector::unit(g.order(), v)
        }
    };
    let result = DiagDistanceResult::from_witness(g, u, DiagMethod::TheoremAFastPath);
    debug_assert!(result.value == delta || result.value == delta + 1);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, petersen, projective_plane_incidence, random_graph};
    use crate::pauli::PauliLetter;

    /// Minimum symplectic weight over all 4^n − 1 Paulis with zero image.
    fn full_pauli_oracle(g: &Graph) -> usize {
        let n = g.order();
        let mut best = usize::MAX;
        for z in 0u64..1 << n {
            for x in 0u64..1 << n {
                if z == 0 && x == 0 {
                    continue;
                }
                let e = PauliVector::new(BitVector::from_u64(n, z), BitVector::from_u64(n, x)).unwrap();
                if cls_map(g, &e).unwrap().is_zero() {
                    best = best.min(e.symplectic_weight());
                }
            }
        }
        best
    }

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn cls_map_examples() {
        let c5 = cycle(5);
        let x0 = PauliVector::single(5, 0, PauliLetter::X);
        assert_eq!(cls_map(&c5, &x0).unwrap(), bv("01001"));
        let v = bv("10110");
        assert_eq!(cls_map(&c5, &PauliVector::z_only(v.clone())).unwrap(), v);
        assert!(cls_map(&c5, &PauliVector::identity(4)).is_err());
    }

    #[test]
    fn named_values_against_the_full_pauli_oracle() {
        let cases = [(complete(3), 2), (cycle(5), 3), (complete(4), 2)];
        for (g, expected) in cases {
            assert_eq!(full_pauli_oracle(&g), expected);
            let exact = diagonal_distance(&g).unwrap();
            assert_eq!(exact.value, expected);
            assert_eq!(oracle_diagonal_distance(&g).unwrap().value, expected);
        }
        assert_eq!(diagonal_distance(&complete(3)).unwrap().witness_u, bv("110"));
    }

    #[test]
    fn petersen_and_heawood() {
        let p = petersen();
        assert_eq!(oracle_diagonal_distance(&p).unwrap().value, 4);
        assert_eq!(diagonal_distance(&p).unwrap().value, 4);
        let h = projective_plane_incidence(2).unwrap();
        assert_eq!(oracle_diagonal_distance(&h).unwrap().value, 4);
        let fast = theorem_a_value(&h).unwrap();
        assert_eq!(fast.value, 4);
        assert_eq!(fast.method, DiagMethod::TheoremAFastPath);
    }

    #[test]
    fn tiny_graphs() {
        let single = Graph::empty(1);
        let r = oracle_diagonal_distance(&single).unwrap();
        assert_eq!(r.value, 1);
        assert_eq!(r.witness_u, bv("1"));
        let k2 = complete(2);
        assert_eq!(full_pauli_oracle(&k2), 2);
        assert_eq!(oracle_diagonal_distance(&k2).unwrap().value, 2);
        assert_eq!(diagonal_distance(&k2).unwrap().value, 2);
        assert!(diagonal_distance(&Graph::empty(0)).is_err());
    }

    #[test]
    fn oracle_refuses_above_cap() {
        let g = Graph::empty(25);
        assert!(matches!(oracle_diagonal_distance(&g), Err(Error::Budget(_))));
        assert!(oracle_diagonal_distance_with(&Graph::empty(6), 5, Exec::Sequential).is_err());
    }

    #[test]
    fn theorem_a_examples() {
        assert_eq!(theorem_a_value(&complete(3)).unwrap().value, 2);
        assert_eq!(theorem_a_value(&cycle(5)).unwrap().value, 3);
        assert!(matches!(theorem_a_value(&complete(4)), Err(Error::Domain(_))));
        assert!(matches!(theorem_a_value(&crate::graph::path(4)), Err(Error::Domain(_))));
    }

    #[test]
    fn engines_agree_with_each_other_and_the_pauli_oracle() {
        for seed in 0..120 {
            let n = 1 + seed as usize % 6;
            let g = random_graph(n, 0.45, seed);
            let exact = diagonal_distance_with(&g, Exec::Sequential).unwrap();
            let oracle = oracle_diagonal_distance_with(&g, 24, Exec::Sequential).unwrap();
            assert_eq!(exact.value, full_pauli_oracle(&g), "{g:?}");
            assert_eq!(exact.witness_u, oracle.witness_u, "{g:?}");
            assert_eq!(exact, DiagDistanceResult { method: DiagMethod::ExactSearch, ..oracle.clone() });
            assert!(cls_map(&g, &exact.witness_pauli).unwrap().is_zero());
            assert!(exact.value <= g.min_degree() + 1);
            assert_eq!(diagonal_distance_with(&g, Exec::Parallel).unwrap(), exact);
        }
    }
}

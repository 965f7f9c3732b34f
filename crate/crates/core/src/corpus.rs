//! Graph corpora for the property suites.
//!
//! The exhaustive corpus holds one graph per isomorphism class of connected
//! 4-cycle-free graphs with δ ≥ 2. It is grown one vertex at a time: every
//! 4-cycle-free graph minus a vertex is 4-cycle-free, so extending each class on
//! `n - 1` vertices by every admissible neighborhood reaches every class on `n`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cws::{ClassicalCode, CwsCode};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graph::{random_c4_free, random_graph, Graph};

/// Limit for the exhaustive corpus. Regular graphs cost up to n! relabelings in
/// the canonical form.
pub const EXHAUSTIVE_MAX_ORDER: usize = 8;

pub const DEFAULT_RANDOM_COUNT: usize = 500;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Origin {
    Exhaustive,
    Random { seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusGraph {
    pub graph: Graph,
    pub origin: Origin,
}

/// Adjacency rows as bitmasks.
type Small = Vec<u64>;

fn code_of(adj: &[u64], order: &[usize]) -> u64 {
    // position p in `order` becomes vertex p
    let n = order.len();
    let mut code = 0u64;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if adj[order[i]] >> order[j] & 1 == 1 {
                code |= 1 << bit;
            }
            bit += 1;
        }
    }
    code
}

/// Minimum code over every relabeling that sorts vertices by (degree, sorted
/// neighbor degrees); both the key order and the set of such relabelings are
/// isomorphism invariant, so the minimum is a canonical form.
fn canonical(adj: &[u64]) -> u64 {
    let n = adj.len();
    let deg: Vec<u32> = adj.iter().map(|r| r.count_ones()).collect();
    let key = |v: usize| {
        let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| deg[w]).collect();
        nd.sort_unstable();
        (deg[v], nd)
    };
    let keys: Vec<_> = (0..n).map(key).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || keys[order[i]] != keys[order[start]] {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut best = u64::MAX;
    permute_blocks(adj, &mut order, &blocks, 0, &mut best);
    best
}

fn permute_blocks(adj: &[u64], order: &mut [usize], blocks: &[(usize, usize)], b: usize, best: &mut u64) {
    let Some(&(lo, hi)) = blocks.get(b) else {
        *best = (*best).min(code_of(adj, order));
        return;
    };
    heap_permute(adj, order, blocks, b, lo, hi - lo, best);
}

/// Heap's algorithm over `order[lo..lo + k]`, recursing into the next block at each
/// permutation.
fn heap_permute(adj: &[u64], order: &mut [usize], blocks: &[(usize, usize)], b: usize, lo: usize, k: usize, best: &mut u64) {
    if k <= 1 {
        permute_blocks(adj, order, blocks, b + 1, best);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(adj, order, blocks, b, lo, k - 1, best);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        order.swap(lo + j, lo + k - 1);
    }
    heap_permute(adj, order, blocks, b, lo, k - 1, best);
}

fn decode(n: usize, code: u64) -> Small {
    let mut adj = vec![0u64; n];
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> bit & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    adj
}

fn to_graph(adj: &[u64]) -> Graph {
    let n = adj.len();
    let rows = adj.iter().map(|&r| BitVector::from_u64(n, r)).collect();
    Graph::from_rows(rows).expect("symmetric masks")
}

fn connected(adj: &[u64]) -> bool {
    let n = adj.len();
    if n == 0 {
        return true;
    }
    let mut seen = 1u64;
    let mut frontier = 1u64;
    while frontier != 0 {
        let mut next = 0;
        for v in 0..n {
            if frontier >> v & 1 == 1 {
                next |= adj[v];
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen.count_ones() as usize == n
}

/// Canonical codes of all 4-cycle-free graphs on `n` vertices, for `n = 0..=max_n`.
fn c4_free_classes(max_n: usize) -> Vec<BTreeSet<u64>> {
    let mut levels = vec![BTreeSet::from([0u64])];
    for n in 1..=max_n {
        let mut next = BTreeSet::new();
        for &code in &levels[n - 1] {
            let base = decode(n - 1, code);
            // candidate neighborhoods, vertex n - 1 is the new one
            for s in 0u64..1 << (n - 1) {
                // two chosen vertices with a common neighbor would close a
                // 4-cycle through the new vertex
                let mut covered = 0u64;
                let mut ok = true;
                for v in 0..n - 1 {
                    if s >> v & 1 == 1 {
                        if covered & base[v] != 0 {
                            ok = false;
                            break;
                        }
                        covered |= base[v];
                    }
                }
                if !ok {
                    continue;
                }
                let mut adj = base.clone();
                adj.push(s);
                for v in 0..n - 1 {
                    if s >> v & 1 == 1 {
                        adj[v] |= 1 << (n - 1);
                    }
                }
                next.insert(canonical(&adj));
            }
        }
        levels.push(next);
    }
    levels
}

/// One representative per isomorphism class of connected 4-cycle-free graphs with
/// δ ≥ 2 on at most `max_n` vertices, ordered by size then canonical code.
pub fn exhaustive_corpus(max_n: usize) -> Result<Vec<Graph>> {
    if max_n > EXHAUSTIVE_MAX_ORDER {
        return Err(Error::Budget(format!(
            "exhaustive corpus is limited to {EXHAUSTIVE_MAX_ORDER} vertices, asked for {max_n}"
        )));
    }
    let levels = c4_free_classes(max_n);
    let mut out = Vec::new();
    for (n, codes) in levels.iter().enumerate() {
        for &code in codes {
            let adj = decode(n, code);
            if n >= 3 && connected(&adj) && adj.iter().all(|r| r.count_ones() >= 2) {
                out.push(to_graph(&adj));
            }
        }
    }
    Ok(out)
}

/// `count` seeded 4-cycle-free graphs with δ ≥ 2, orders cycling through
/// `min_n..=max_n`, target minimum degree alternating between 2 and 3. Seeds whose
/// greedy construction stalls below δ = 2 are skipped.
pub fn random_c4_free_corpus(count: usize, min_n: usize, max_n: usize, seed: u64) -> Result<Vec<CorpusGraph>> {
    if min_n > max_n || min_n < 3 {
        return Err(Error::Contract(format!("bad order range {min_n}..={max_n}")));
    }
    let span = (max_n - min_n + 1) as u64;
    let mut out = Vec::with_capacity(count);
    let mut attempt = 0u64;
    let max_attempts = 50 * count as u64 + 100;
    while out.len() < count {
        if attempt >= max_attempts {
            return Err(Error::Budget(format!(
                "only {} of {count} random graphs reached δ ≥ 2 in {max_attempts} attempts",
                out.len()
            )));
        }
        let s = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(attempt);
        let n = min_n + (attempt % span) as usize;
        let target = 2 + (attempt / span % 2) as usize;
        attempt += 1;
        let r = random_c4_free(n, target, s);
        if r.graph.min_degree() >= 2 {
            out.push(CorpusGraph {
                graph: r.graph,
                origin: Origin::Random { seed: s },
            });
        }
    }
    Ok(out)
}

/// The exhaustive corpus on `n ≤ max_n` followed by `random` seeded graphs on 8 to
/// 12 vertices.
pub fn theorem_corpus(max_n: usize, random: usize, seed: u64) -> Result<Vec<CorpusGraph>> {
    let mut out: Vec<CorpusGraph> = exhaustive_corpus(max_n)?
        .into_iter()
        .map(|graph| CorpusGraph {
            graph,
            origin: Origin::Exhaustive,
        })
        .collect();
    if random > 0 {
        out.extend(random_c4_free_corpus(random, 8, 12, seed)?);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct CwsInstance {
    pub code: CwsCode,
    pub seed: u64,
}

/// Random `(G, C)` pairs: `3 ≤ n ≤ max_n`, edge probability in [0.15, 0.6], and
/// 2 to 8 distinct words. Half the codes are confined to a random coordinate subset
/// so that classically degenerate codes occur often.
pub fn random_cws_instances(count: usize, max_n: usize, seed: u64) -> Result<Vec<CwsInstance>> {
    if !(3..=20).contains(&max_n) {
        return Err(Error::Contract(format!("instance order cap {max_n} outside 3..=20")));
    }
    let mut out = Vec::with_capacity(count);
    for i in 0..count as u64 {
        let s = seed.wrapping_mul(0xbf58_476d_1ce4_e5b9).wrapping_add(i);
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let n = rng.gen_range(3..=max_n);
        let p = rng.gen_range(0.15..0.6);
        let g = random_graph(n, p, rng.gen());
        let mut coords: Vec<usize> = (0..n).collect();
        if rng.gen_bool(0.5) {
            coords.shuffle(&mut rng);
            coords.truncate(rng.gen_range(1..n));
        }
        let room = 1usize << coords.len();
        let k = rng.gen_range(2..=8).min(room);
        let mut words: Vec<BitVector> = Vec::with_capacity(k);
        while words.len() < k {
            let mut w = BitVector::zeros(n);
            for &c in &coords {
                if rng.gen_bool(0.5) {
                    w.set(c, true);
                }
            }
            if !words.contains(&w) {
                words.push(w);
            }
        }
        out.push(CwsInstance {
            code: CwsCode::new(g, ClassicalCode::explicit(words)?)?,
            seed: s,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;
    use std::collections::HashSet;

    /// Brute-force canonical form: minimum code over all n! relabelings.
    fn full_canonical(adj: &[u64]) -> u64 {
        let n = adj.len();
        let mut order: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        fn rec(adj: &[u64], order: &mut Vec<usize>, k: usize, best: &mut u64) {
            if k == order.len() {
                *best = (*best).min(code_of(adj, order));
                return;
            }
            for i in k..order.len() {
                order.swap(k, i);
                rec(adj, order, k + 1, best);
                order.swap(k, i);
            }
        }
        rec(adj, &mut order, 0, &mut best);
        best
    }

    fn masks(g: &Graph) -> Small {
        g.rows().iter().map(|r| r.to_u64().unwrap()).collect()
    }

    /// Every labeled graph, filtered, then collapsed by the brute-force form.
    fn brute_classes(n: usize) -> HashSet<u64> {
        let pairs = n * (n - 1) / 2;
        let mut out = HashSet::new();
        for code in 0u64..1 << pairs {
            let adj = decode(n, code);
            let g = to_graph(&adj);
            if !g.has_four_cycle() && g.is_connected() && g.min_degree() >= 2 {
                out.insert(full_canonical(&adj));
            }
        }
        out
    }

    #[test]
    fn canonical_form_is_invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for seed in 0..60 {
            let g = random_graph(3 + seed as usize % 6, 0.5, seed);
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.shuffle(&mut rng);
            let h = g.permute(&perm).unwrap();
            assert_eq!(canonical(&masks(&g)), canonical(&masks(&h)));
            let back = to_graph(&decode(g.order(), canonical(&masks(&g))));
            assert_eq!(full_canonical(&masks(&back)), full_canonical(&masks(&g)));
        }
    }

    #[test]
    fn exhaustive_corpus_matches_labeled_enumeration() {
        let corpus = exhaustive_corpus(6).unwrap();
        for n in 3..=6 {
            let ours: HashSet<u64> = corpus
                .iter()
                .filter(|g| g.order() == n)
                .map(|g| full_canonical(&masks(g)))
                .collect();
            let count = corpus.iter().filter(|g| g.order() == n).count();
            assert_eq!(count, ours.len(), "duplicate classes at n = {n}");
            assert_eq!(ours, brute_classes(n), "n = {n}");
        }
        assert!(corpus.contains(&crate::graph::complete(3)));
        assert!(corpus.iter().any(|g| full_canonical(&masks(g)) == full_canonical(&masks(&cycle(5)))));
    }

    #[test]
    fn exhaustive_corpus_members_qualify() {
        let corpus = exhaustive_corpus(7).unwrap();
        assert!(corpus.iter().all(|g| !g.has_four_cycle() && g.is_connected() && g.min_degree() >= 2));
        assert!(corpus.iter().any(|g| g.order() == 7));
        assert!(exhaustive_corpus(9).is_err());
    }

    #[test]
    fn random_corpora_are_seeded_and_qualify() {
        let a = random_c4_free_corpus(40, 8, 12, 1).unwrap();
        let b = random_c4_free_corpus(40, 8, 12, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|c| !c.graph.has_four_cycle() && c.graph.min_degree() >= 2));
        assert!(a.iter().all(|c| (8..=12).contains(&c.graph.order())));
        let inst = random_cws_instances(50, 8, 3).unwrap();
        assert!(inst.iter().all(|i| (2..=8).contains(&i.code.code().size()) && i.code.n() <= 8));
    }
}

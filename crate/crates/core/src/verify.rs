//! Property suites over generated corpora. Every failed check is kept as a
//! falsification with the graph6 string and enough detail to replay it.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::corpus::{self, CorpusGraph, Origin};
use crate::cws::{check_necessary_conditions, degeneracy_classify_with, CheckOutcome, ClassifyOptions, Verdict};
use crate::diagdist::{self, DEFAULT_ORACLE_CAP};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::graph::{self, Graph};
use crate::par::{self, Exec};
use crate::structure::{
    classify_gamma_with_gap, end_cor_certificate, enumerate_zero_sum_subsets, ColumnSystem, GammaCondition,
};

/// Falsifications kept per check; the tally still counts all of them.
pub const MAX_DUMPS_PER_CHECK: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    TheoremA,
    EndCor,
    FastPath,
    MainLemma,
    TheoremB,
    Graph6,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::TheoremA,
        Suite::EndCor,
        Suite::FastPath,
        Suite::MainLemma,
        Suite::TheoremB,
        Suite::Graph6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::TheoremA => "theorem-a",
            Suite::EndCor => "end-cor",
            Suite::FastPath => "fast-path",
            Suite::MainLemma => "main-lemma",
            Suite::TheoremB => "theorem-b",
            Suite::Graph6 => "graph6",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Largest order in the exhaustive corpus.
    pub max_n: usize,
    /// Seeded random graphs on 8 to 12 vertices added to the corpus.
    pub random: usize,
    pub seed: u64,
    /// Random `(G, C)` instances for the degeneracy suite.
    pub instances: usize,
    /// Order cap for those instances.
    pub instance_max_n: usize,
    pub exec: Exec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 7,
            random: corpus::DEFAULT_RANDOM_COUNT,
            seed: 1,
            instances: 2000,
            instance_max_n: 8,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Falsification {
    pub check: String,
    pub graph6: String,
    pub origin: Origin,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub instances: usize,
    pub checks: Vec<CheckTally>,
    pub falsifications: Vec<Falsification>,
    /// Counters that are not pass/fail, e.g. how many instances were degenerate.
    pub notes: Vec<(String, usize)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.failures == 0)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failures).sum()
    }
}

/// One check outcome on one instance.
struct Outcome {
    check: &'static str,
    ok: bool,
    detail: String,
}

fn ok(check: &'static str, ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    Outcome {
        check,
        ok,
        detail: if ok { String::new() } else { detail() },
    }
}

fn graph6_of(g: &Graph) -> String {
    graph::to_graph6(g).unwrap_or_else(|_| graph::to_edge_list(g))
}

/// Collect per-instance outcomes into tallies, keeping falsification dumps in
/// instance order.
fn tally(suite: Suite, names: &[&'static str], rows: Vec<(String, Origin, Vec<Outcome>)>) -> SuiteReport {
    let mut checks: Vec<CheckTally> = names
        .iter()
        .map(|n| CheckTally {
            name: n.to_string(),
            checked: 0,
            failures: 0,
        })
        .collect();
    let mut falsifications = Vec::new();
    let instances = rows.len();
    for (graph6, origin, outcomes) in rows {
        for o in outcomes {
            let t = checks.iter_mut().find(|c| c.name == o.check).expect("declared check");
            t.checked += 1;
            if !o.ok {
                t.failures += 1;
                if t.failures <= MAX_DUMPS_PER_CHECK {
                    falsifications.push(Falsification {
                        check: o.check.to_string(),
                        graph6: graph6.clone(),
                        origin: origin.clone(),
                        detail: o.detail,
                    });
                }
            }
        }
    }
    SuiteReport {
        suite,
        instances,
        checks,
        falsifications,
        notes: Vec::new(),
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match suite {
        Suite::TheoremA => theorem_a(&corpus::theorem_corpus(cfg.max_n, cfg.random, cfg.seed)?, cfg.exec),
        Suite::EndCor => end_cor(&corpus::theorem_corpus(cfg.max_n, cfg.random, cfg.seed)?, cfg.exec),
        Suite::FastPath => fast_path(&corpus::theorem_corpus(cfg.max_n, cfg.random, cfg.seed)?, cfg.exec),
        Suite::MainLemma => main_lemma(&corpus::theorem_corpus(cfg.max_n, 0, cfg.seed)?, cfg.exec),
        Suite::TheoremB => theorem_b(cfg),
        Suite::Graph6 => graph6_suite(&corpus::theorem_corpus(cfg.max_n, cfg.random, cfg.seed)?, cfg.exec),
    }
}

/// Evaluate `f` on every corpus graph, in parallel across graphs.
fn per_graph<F>(corpus: &[CorpusGraph], exec: Exec, f: F) -> Result<Vec<(String, Origin, Vec<Outcome>)>>
where
    F: Fn(&Graph) -> Result<Vec<Outcome>> + Sync + Send,
{
    let rows = par::map_collect(exec, corpus, |c| f(&c.graph).map(|o| (graph6_of(&c.graph), c.origin.clone(), o)));
    rows.into_iter().collect()
}

fn oracle_value(g: &Graph) -> Result<usize> {
    Ok(diagdist::oracle_diagonal_distance_with(g, DEFAULT_ORACLE_CAP, Exec::Sequential)?.value)
}

pub fn theorem_a(corpus: &[CorpusGraph], exec: Exec) -> Result<SuiteReport> {
    let rows = per_graph(corpus, exec, |g| {
        let d = oracle_value(g)?;
        let delta = g.min_degree();
        Ok(vec![
            ok("delta-or-delta-plus-one", d == delta || d == delta + 1, || {
                format!("oracle Δ′ = {d}, δ = {delta}")
            }),
            ok("above-half-delta", 2 * d > delta, || format!("oracle Δ′ = {d}, δ = {delta}")),
        ])
    })?;
    Ok(tally(Suite::TheoremA, &["delta-or-delta-plus-one", "above-half-delta"], rows))
}

pub fn end_cor(corpus: &[CorpusGraph], exec: Exec) -> Result<SuiteReport> {
    let rows = per_graph(corpus, exec, |g| {
        let d = oracle_value(g)?;
        let delta = g.min_degree();
        let cert = end_cor_certificate(g)?;
        let mut out = vec![ok("certificate-iff-delta", cert.is_some() == (d == delta), || {
            format!(
                "oracle Δ′ = {d}, δ = {delta}, certificate {}",
                cert.as_ref().map_or("absent".to_string(), |c| format!("V′ = {:?}", c.v_prime))
            )
        })];
        if let Some(c) = &cert {
            let u = BitVector::from_indices(g.order(), c.v_prime.iter().copied())?;
            let mut x = BitVector::zeros(g.order());
            for &v in &c.v_prime {
                x.xor_assign(g.row(v))?;
            }
            let w = u.or(&x)?.weight();
            out.push(ok("certificate-witness-weight", w == delta && x == u, || {
                format!("V′ = {:?} gives A·u = {x}, weight {w}", c.v_prime)
            }));
        }
        Ok(out)
    })?;
    Ok(tally(Suite::EndCor, &["certificate-iff-delta", "certificate-witness-weight"], rows))
}

pub fn fast_path(corpus: &[CorpusGraph], exec: Exec) -> Result<SuiteReport> {
    let rows = per_graph(corpus, exec, |g| {
        let fast = diagdist::theorem_a_value(g)?;
        let search = diagdist::diagonal_distance_with(g, Exec::Sequential)?;
        let oracle = diagdist::oracle_diagonal_distance_with(g, DEFAULT_ORACLE_CAP, Exec::Sequential)?;
        let fast_image = diagdist::cls_map(g, &fast.witness_pauli)?;
        Ok(vec![
            ok("values-agree", fast.value == search.value && search.value == oracle.value, || {
                format!("fast path {}, search {}, oracle {}", fast.value, search.value, oracle.value)
            }),
            ok("witnesses-agree", search.witness_u == oracle.witness_u, || {
                format!("search u = {}, oracle u = {}", search.witness_u, oracle.witness_u)
            }),
            ok(
                "fast-witness-valid",
                fast_image.is_zero() && fast.witness_pauli.symplectic_weight() == fast.value,
                || format!("fast witness {} has image {fast_image}", fast.witness_pauli),
            ),
        ])
    })?;
    Ok(tally(Suite::FastPath, &["values-agree", "witnesses-agree", "fast-witness-valid"], rows))
}

pub fn main_lemma(corpus: &[CorpusGraph], exec: Exec) -> Result<SuiteReport> {
    let rows = per_graph(corpus, exec, |g| {
        let delta = g.min_degree();
        let sys = ColumnSystem::from_graph(g);
        let mut out = Vec::new();
        for gamma in enumerate_zero_sum_subsets(&sys, 2 * delta + 1)? {
            let c = classify_gamma_with_gap(&sys, &gamma, delta)?;
            let labels = || gamma.iter().map(|&i| sys.label(i)).collect::<Vec<_>>().join(",");
            out.push(ok("nonempty-classification", !c.conditions.is_empty(), || {
                format!("Γ = {{{}}} meets none of O, A.1, A.2, B, C", labels())
            }));
            out.push(ok("no-subset-below-delta-plus-one", gamma.len() > delta, || {
                format!("zero-sum Γ = {{{}}} of size {} < δ + 1 = {}", labels(), gamma.len(), delta + 1)
            }));
            if gamma.len() == delta + 1 {
                let star = c.conditions.contains(&GammaCondition::Star);
                let all_heavy = c.gamma_delta_size == gamma.len();
                out.push(ok("size-delta-plus-one-form", star || all_heavy, || {
                    format!("Γ = {{{}}} is neither a star nor all heavy columns", labels())
                }));
            }
        }
        Ok(out)
    })?;
    Ok(tally(
        Suite::MainLemma,
        &["nonempty-classification", "no-subset-below-delta-plus-one", "size-delta-plus-one-form"],
        rows,
    ))
}

pub fn theorem_b(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let instances = corpus::random_cws_instances(cfg.instances, cfg.instance_max_n, cfg.seed)?;
    let opts = ClassifyOptions {
        exec: Exec::Sequential,
        ..ClassifyOptions::default()
    };
    let rows = par::map_collect(cfg.exec, &instances, |inst| -> Result<_> {
        let m = &inst.code;
        let report = degeneracy_classify_with(m, opts)?;
        let mut out = Vec::new();
        let mut tag = "nondegenerate";
        match report.verdict {
            Verdict::Unresolved => {
                return Err(Error::Budget(format!("seed {} left unresolved at budget {}", inst.seed, report.budget)));
            }
            Verdict::Nondegenerate => {}
            Verdict::Degenerate => {
                let chk = check_necessary_conditions(m, &report)?;
                tag = match chk.outcome {
                    CheckOutcome::NotApplicable => "single-word",
                    _ => "degenerate",
                };
                if chk.outcome != CheckOutcome::NotApplicable {
                    let words = || m.code().words().iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",");
                    out.push(ok("short-cycle-or-classically-degenerate", chk.disjunction_holds, || {
                        format!("seed {}, words {}, {}: {}", inst.seed, words(), report.distance, chk.detail)
                    }));
                    if let Some(all) = chk.min_degree_all_degenerate {
                        out.push(ok("girth-five-min-degree-coordinates", all, || {
                            format!("seed {}, words {}: {}", inst.seed, words(), chk.detail)
                        }));
                    }
                }
            }
        }
        Ok((graph6_of(m.graph()), Origin::Random { seed: inst.seed }, out, tag))
    });
    let rows: Vec<_> = rows.into_iter().collect::<Result<_>>()?;
    let mut notes: Vec<(String, usize)> = ["nondegenerate", "degenerate", "single-word"]
        .iter()
        .map(|t| (t.to_string(), rows.iter().filter(|r| r.3 == *t).count()))
        .collect();
    let girth5 = rows
        .iter()
        .filter(|r| r.2.iter().any(|o| o.check == "girth-five-min-degree-coordinates"))
        .count();
    notes.push(("degenerate-with-girth-at-least-five".into(), girth5));
    let rows = rows.into_iter().map(|(g, o, out, _)| (g, o, out)).collect();
    let mut report = tally(
        Suite::TheoremB,
        &["short-cycle-or-classically-degenerate", "girth-five-min-degree-coordinates"],
        rows,
    );
    report.notes = notes;
    Ok(report)
}

pub fn graph6_suite(corpus: &[CorpusGraph], exec: Exec) -> Result<SuiteReport> {
    let rows = per_graph(corpus, exec, |g| {
        let s = graph::to_graph6(g)?;
        let back = graph::from_graph6(&s)?;
        let again = graph::to_graph6(&back)?;
        Ok(vec![ok("round-trip", back == *g && again == s, || {
            format!("decoded {back:?}, re-encoded {again}")
        })])
    })?;
    let mut report = tally(Suite::Graph6, &["round-trip", "cycle5-is-Dhc"], rows);
    let c5 = graph::to_graph6(&graph::cycle(5))?;
    let t = report.checks.iter_mut().find(|c| c.name == "cycle5-is-Dhc").expect("declared");
    t.checked = 1;
    if c5 != "Dhc" {
        t.failures = 1;
        report.falsifications.push(Falsification {
            check: "cycle5-is-Dhc".into(),
            graph6: c5.clone(),
            origin: Origin::Exhaustive,
            detail: format!("cycle(5) encodes as {c5}"),
        });
    }
    Ok(report)
}

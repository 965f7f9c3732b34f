//! Acceptance run: one PASS/FAIL line per criterion, with its runtime budget.
//!
//! Criterion 10 cannot be met: on the PG(2,2) incidence graph with code
//! {0^14, 1^14}, `X(e_v)Z(r_v)` has weight 4, maps to zero under `Cl_S` and
//! anticommutes with `Z(1^14)`, so the distance is exactly 4. The run still
//! evaluates the criterion as stated and prints FAIL; the process fails only on
//! unexpected outcomes, including criterion 10 starting to pass.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cwsdiag::corpus::{self, CorpusGraph};
use cwsdiag::cws::{self, ClassicalCode, CwsCode, DistanceStatus, Verdict};
use cwsdiag::diagdist;
use cwsdiag::graph::{complete, cycle, petersen, projective_plane_incidence, Graph};
use cwsdiag::search::{self, CliqueMode};
use cwsdiag::verify::{self, SuiteConfig, SuiteReport};
use cwsdiag::{BitVector, Exec, PauliVector};

const SEED: u64 = 1;
const KNOWN_UNATTAINABLE: &[u32] = &[10];

struct Line {
    id: u32,
    title: &'static str,
    pass: bool,
    elapsed: Duration,
    limit: Option<Duration>,
    detail: String,
}

fn run(id: u32, title: &'static str, limit: Option<Duration>, f: impl FnOnce() -> (bool, String)) -> Line {
    let start = Instant::now();
    let (ok, detail) = f();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let detail = if in_time {
        detail
    } else {
        format!("{detail}; over the {:.0?} limit", limit.unwrap())
    };
    Line {
        id,
        title,
        pass: ok && in_time,
        elapsed,
        limit,
        detail,
    }
}

fn suite_summary(r: &SuiteReport, checks: &[&str]) -> (bool, String) {
    let picked: Vec<_> = r.checks.iter().filter(|c| checks.contains(&c.name.as_str())).collect();
    let pass = !picked.is_empty() && picked.iter().all(|c| c.failures == 0 && c.checked > 0);
    let mut parts: Vec<String> = picked
        .iter()
        .map(|c| format!("{}: {}/{} ok", c.name, c.checked - c.failures, c.checked))
        .collect();
    if let Some(f) = r.falsifications.iter().find(|f| checks.contains(&f.check.as_str())) {
        parts.push(format!("first counterexample {} ({})", f.graph6, f.detail));
    }
    (pass, parts.join(", "))
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() -> ExitCode {
    let exec = Exec::default();
    let start = Instant::now();
    let corpus: Vec<CorpusGraph> = corpus::theorem_corpus(7, corpus::DEFAULT_RANDOM_COUNT, SEED).expect("corpus");
    let exhaustive: Vec<CorpusGraph> = corpus
        .iter()
        .filter(|c| c.origin == corpus::Origin::Exhaustive)
        .cloned()
        .collect();
    let random = corpus.len() - exhaustive.len();
    println!(
        "corpus: {} exhaustive classes (n ≤ 7) + {random} random graphs (8 ≤ n ≤ 12), built in {:.2?}",
        exhaustive.len(),
        start.elapsed()
    );

    let mut lines = Vec::new();
    let mut theorem_a = None;

    lines.push(run(1, "oracle Δ′ ∈ {δ, δ+1} on 4-cycle-free graphs", secs(120), || {
        let r = verify::theorem_a(&corpus, exec).expect("theorem-a suite");
        let out = suite_summary(&r, &["delta-or-delta-plus-one"]);
        let pass = out.0 && random >= 500;
        theorem_a = Some(r);
        (pass, out.1)
    }));

    lines.push(run(2, "end_cor certificate exists iff Δ′ = δ", None, || {
        let r = verify::end_cor(&corpus, exec).expect("end-cor suite");
        suite_summary(&r, &["certificate-iff-delta", "certificate-witness-weight"])
    }));

    lines.push(run(3, "fast path = search = oracle", None, || {
        let r = verify::fast_path(&corpus, exec).expect("fast-path suite");
        suite_summary(&r, &["values-agree", "witnesses-agree", "fast-witness-valid"])
    }));

    lines.push(run(4, "named Δ′ values from the oracle", secs(10), || {
        let heawood = projective_plane_incidence(2).expect("PG(2,2)");
        let named: [(&str, Graph, usize); 5] = [
            ("K3", complete(3), 2),
            ("C5", cycle(5), 3),
            ("K4", complete(4), 2),
            ("Petersen", petersen(), 4),
            ("Heawood", heawood, 4),
        ];
        let mut pass = true;
        let mut parts = Vec::new();
        for (name, g, want) in named {
            let got = diagdist::oracle_diagonal_distance(&g).expect("oracle").value;
            pass &= got == want;
            parts.push(format!("{name}={got}"));
        }
        (pass, parts.join(" "))
    }));

    lines.push(run(5, "zero-sum subsets: none below δ+1, size δ+1 is a star or all heavy (n ≤ 7)", None, || {
        let r = verify::main_lemma(&exhaustive, exec).expect("main-lemma suite");
        suite_summary(
            &r,
            &["nonempty-classification", "no-subset-below-delta-plus-one", "size-delta-plus-one-form"],
        )
    }));

    lines.push(run(6, "Δ′ > δ/2 on the corpus", None, || {
        suite_summary(theorem_a.as_ref().expect("criterion 1 ran"), &["above-half-delta"])
    }));

    lines.push(run(7, "degenerate codes need a short cycle or an unused coordinate (2000 random (G, C))", secs(300), || {
        let cfg = SuiteConfig {
            seed: SEED,
            instances: 2000,
            instance_max_n: 8,
            exec,
            ..SuiteConfig::default()
        };
        let r = verify::theorem_b(&cfg).expect("theorem-b suite");
        let (pass, mut detail) = suite_summary(
            &r,
            &["short-cycle-or-classically-degenerate", "girth-five-min-degree-coordinates"],
        );
        let notes: Vec<String> = r.notes.iter().map(|(k, v)| format!("{k}={v}")).collect();
        detail.push_str(&format!(" [{}]", notes.join(" ")));
        (pass && r.instances >= 2000, detail)
    }));

    lines.push(run(8, "five-qubit code: d = 3 = Δ′, nondegenerate", secs(1), || {
        let words = vec![BitVector::zeros(5), BitVector::ones(5)];
        let m = CwsCode::new(cycle(5), ClassicalCode::explicit(words).unwrap()).unwrap();
        let r = cws::degeneracy_classify(&m).expect("classify");
        let pass = r.distance.exact() == Some(3) && r.verdict == Verdict::Nondegenerate && r.diag_distance == 3;
        (pass, format!("distance {}, Δ′ = {}, {}", r.distance, r.diag_distance, r.verdict))
    }));

    lines.push(run(9, "search regression on C5", secs(30), || {
        let r2 = search::search_code(&cycle(5), 2, CliqueMode::Exact).expect("d = 2");
        let r3 = search::search_code(&cycle(5), 3, CliqueMode::Exact).expect("d = 3");
        // independent re-check of the d = 2 code by full enumeration
        let m = CwsCode::new(cycle(5), ClassicalCode::explicit(r2.words.clone()).unwrap()).unwrap();
        let full = cws::distance_with(&m, 5, Exec::Sequential).expect("distance");
        let pass = r2.k() == 6 && r2.complete && full.at_least() >= 2 && r3.k() == 2 && r3.complete;
        (
            pass,
            format!("d=2: K = {} (full enumeration {full}); d=3: K = {}", r2.k(), r3.k()),
        )
    }));

    lines.push(run(10, "√n family: all errors of weight ≤ 4 detected", secs(120), || {
        let code = ClassicalCode::explicit(vec![BitVector::zeros(14), BitVector::ones(14)]).unwrap();
        let fam = match search::construct_sqrt_family(2, code) {
            Ok(f) => f,
            Err(e) => return (false, format!("precondition rejected: {e}")),
        };
        let d = cws::distance_with(&fam.code, 4, exec).expect("distance");
        let pass = d.status == DistanceStatus::LowerBound { w: 5 };
        (
            pass,
            format!(
                "precondition {} > {} accepted; search to weight 4 gives {d}; certified bound is ≥ {}",
                fam.guarantee.classical_distance, fam.guarantee.required_above, fam.guarantee.distance_at_least
            ),
        )
    }));

    lines.push(run(11, "graph6 round trip and C5 = Dhc", None, || {
        let r = verify::graph6_suite(&corpus, exec).expect("graph6 suite");
        suite_summary(&r, &["round-trip", "cycle5-is-Dhc"])
    }));

    let mut unexpected = 0;
    for l in &lines {
        let known = KNOWN_UNATTAINABLE.contains(&l.id);
        let verdict = if l.pass { "PASS" } else { "FAIL" };
        let limit = l.limit.map_or(String::new(), |d| format!(" / {d:.0?}"));
        let note = if known && !l.pass { " (known unattainable)" } else { "" };
        println!(
            "criterion {:>2} {verdict}{note} [{:.2?}{limit}] {}: {}",
            l.id, l.elapsed, l.title, l.detail
        );
        if l.pass == known {
            unexpected += 1;
        }
    }
    // the counterexample behind criterion 10, checked directly
    let g = projective_plane_incidence(2).unwrap();
    let m = CwsCode::new(g.clone(), ClassicalCode::explicit(vec![BitVector::zeros(14), BitVector::ones(14)]).unwrap())
        .unwrap();
    let e = PauliVector::new(g.row(0).clone(), BitVector::unit(14, 0)).unwrap();
    let escapes = e.symplectic_weight() == 4 && !cws::detects_error(&m, &e).unwrap().detected;
    println!("criterion 10 counterexample X(e_0)Z(r_0) = {e}: weight 4, undetected: {escapes}");
    if !escapes {
        unexpected += 1;
    }
    println!(
        "{} criteria, {} pass, {} unexpected outcome(s), total {:.2?}",
        lines.len(),
        lines.iter().filter(|l| l.pass).count(),
        unexpected,
        start.elapsed()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use std::hint::black_box;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cwsdiag::corpus;
use cwsdiag::cws::{distance_with, ClassicalCode, CwsCode};
use cwsdiag::diagdist::{diagonal_distance_with, oracle_diagonal_distance_with, DEFAULT_ORACLE_CAP};
use cwsdiag::graph::{petersen, projective_plane_incidence, random_c4_free};
use cwsdiag::search::{search_code_with, CliqueMode, SearchOptions};
use cwsdiag::verify;
use cwsdiag::{BitVector, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn diag(c: &mut Criterion) {
    let heawood = projective_plane_incidence(2).unwrap();
    let dense = random_c4_free(20, 4, 7).graph;
    let mut group = c.benchmark_group("diag_distance");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("oracle/heawood", name), &exec, |b, &e| {
            b.iter(|| oracle_diagonal_distance_with(black_box(&heawood), DEFAULT_ORACLE_CAP, e).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("search/c4free-20", name), &exec, |b, &e| {
            b.iter(|| diagonal_distance_with(black_box(&dense), e).unwrap())
        });
    }
    group.finish();
}

fn cws_distance(c: &mut Criterion) {
    let g = projective_plane_incidence(2).unwrap();
    let code = ClassicalCode::explicit(vec![BitVector::zeros(14), BitVector::ones(14)]).unwrap();
    let m = CwsCode::new(g, code).unwrap();
    let mut group = c.benchmark_group("cws_distance");
    for (name, exec) in MODES {
        // weight 3 is fully enumerated; weight 4 stops at the first escape
        group.bench_with_input(BenchmarkId::new("pg2-to-weight-3", name), &exec, |b, &e| {
            b.iter(|| distance_with(black_box(&m), 3, e).unwrap())
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let g = petersen();
    let mut group = c.benchmark_group("code_search");
    for (name, exec) in MODES {
        let opts = SearchOptions {
            mode: CliqueMode::Greedy { restarts: 16, seed: 1 },
            exec,
            ..SearchOptions::default()
        };
        group.bench_with_input(BenchmarkId::new("petersen-d3-greedy", name), &opts, |b, o| {
            b.iter(|| search_code_with(black_box(&g), 3, *o).unwrap())
        });
    }
    group.finish();
}

fn suites(c: &mut Criterion) {
    let graphs = corpus::theorem_corpus(7, 200, 1).unwrap();
    let mut group = c.benchmark_group("corpus_suites");
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::new("theorem-a", name), &exec, |b, &e| {
            b.iter(|| verify::theorem_a(black_box(&graphs), e).unwrap())
        });
        let cfg = verify::SuiteConfig {
            instances: 300,
            exec,
            ..verify::SuiteConfig::default()
        };
        group.bench_with_input(BenchmarkId::new("theorem-b-300", name), &cfg, |b, cfg| {
            b.iter(|| verify::theorem_b(black_box(cfg)).unwrap())
        });
    }
    group.finish();
}

fn config() -> Criterion {
    Criterion::default()
        .sample_size(10)
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(2))
}

criterion_group! {
    name = benches;
    config = config();
    targets = diag, cws_distance, search, suites
}
criterion_main!(benches);

//! `cwsdiag`: diagonal distance, degeneracy classification, code search and
//! corpus verification from the command line. Every command prints one JSON
//! report.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cwsdiag::cws::{self, CheckOutcome, ClassifyOptions, CwsCode, Verdict};
use cwsdiag::diagdist::{self, DEFAULT_ORACLE_CAP};
use cwsdiag::graph::{self, Graph};
use cwsdiag::search::{self, CliqueBudget, CliqueMode, SearchOptions};
use cwsdiag::verify::{self, Suite, SuiteConfig};
use cwsdiag::{Error, Exec};

use report::{ErrorBody, ErrorReport, Report, Timing};

#[derive(Parser, Debug)]
#[command(name = "cwsdiag", version, about = "Diagonal distance and degeneracy tools for CWS codes")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Run every engine on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Diagonal distance of a graph.
    Diag(DiagArgs),
    /// Distance and degeneracy verdict of a CWS code file.
    Classify(ClassifyArgs),
    /// Search for a large code of given distance on a graph.
    Search(SearchArgs),
    /// Run verification suites over the built-in corpus.
    Verify(VerifyArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Diag(_) => "diag",
            Command::Classify(_) => "classify",
            Command::Search(_) => "search",
            Command::Verify(_) => "verify",
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Generator {
    Cycle,
    Path,
    Complete,
    Bipartite,
    Petersen,
    Pg,
    RandomC4Free,
}

#[derive(Args, Debug)]
#[group(id = "source", required = true, multiple = false)]
struct GraphSource {
    /// Graph in graph6 format.
    #[arg(long)]
    graph6: Option<String>,
    /// File whose first non-comment line is a graph6 string.
    #[arg(long, value_name = "PATH")]
    graph6_file: Option<PathBuf>,
    /// Edge-list file: vertex count, then one `u v` pair per line.
    #[arg(long, value_name = "PATH")]
    edges: Option<PathBuf>,
    /// Built-in family.
    #[arg(long = "gen", value_enum)]
    generator: Option<Generator>,
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Order for cycle, path, complete and random-c4-free.
    #[arg(long)]
    n: Option<usize>,
    /// Prime order of the projective plane for `pg`.
    #[arg(long)]
    q: Option<usize>,
    /// Part sizes for `bipartite`.
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    /// Target minimum degree for `random-c4-free`.
    #[arg(long, default_value_t = 2)]
    target_degree: usize,
    /// RNG seed, or `random`.
    #[arg(long, default_value = "1", value_parser = report::parse_seed)]
    seed: u64,
}

#[derive(Args, Debug)]
struct DiagArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Also run the brute-force oracle and report agreement.
    #[arg(long)]
    oracle: bool,
    /// Use the closed-form value for 4-cycle-free graphs.
    #[arg(long)]
    fast_path: bool,
    /// Largest order the oracle accepts.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    /// Code file: a graph6 line followed by one codeword per line.
    #[arg(long, value_name = "PATH")]
    code: PathBuf,
    /// Enumerate errors at least this heavy (0 means Δ′ + 1).
    #[arg(long, default_value_t = 0)]
    max_weight: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exact,
    Greedy,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Required distance.
    #[arg(long)]
    d: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Branch-and-bound node budget for exact mode.
    #[arg(long)]
    budget: Option<u64>,
    /// Time limit in seconds for exact mode.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Greedy restarts.
    #[arg(long, default_value_t = 16)]
    restarts: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Largest order in the exhaustive corpus.
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    #[arg(long, default_value = "1", value_parser = report::parse_seed)]
    seed: u64,
    /// Random graphs added to the corpus.
    #[arg(long, default_value_t = cwsdiag::corpus::DEFAULT_RANDOM_COUNT)]
    random: usize,
    /// Random (graph, code) instances for theorem-b.
    #[arg(long, default_value_t = 2000)]
    instances: usize,
    /// Order cap for those instances.
    #[arg(long, default_value_t = 8)]
    instance_max_n: usize,
}

/// What a command produced, plus whether it found a counterexample.
struct Outcome {
    inputs: Value,
    results: Value,
    falsified: bool,
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Lib(e) => e.kind(),
            Failure::Io(..) => "io",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(e) => report::exit_code_for(e),
            Failure::Io(..) => report::EXIT_OTHER,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

type CmdResult = std::result::Result<Outcome, Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn need(v: Option<usize>, flag: &str, generator: &str) -> std::result::Result<usize, Failure> {
    v.ok_or_else(|| Failure::Lib(Error::Parse(format!("--gen {generator} needs {flag}"))))
}

fn load_graph(args: &GraphArgs) -> std::result::Result<(Graph, Value), Failure> {
    let src = &args.source;
    if let Some(s) = &src.graph6 {
        return Ok((graph::from_graph6(s.trim())?, json!({ "graph6": s })));
    }
    if let Some(p) = &src.graph6_file {
        let text = read(p)?;
        let line = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .find(|l| !l.is_empty())
            .ok_or_else(|| Error::Parse(format!("{}: no graph6 line", p.display())))?;
        return Ok((graph::from_graph6(line)?, json!({ "graph6_file": p })));
    }
    if let Some(p) = &src.edges {
        return Ok((graph::from_edge_list(&read(p)?)?, json!({ "edges": p })));
    }
    let generator = src.generator.expect("clap enforces one source");
    let (g, params) = match generator {
        Generator::Cycle => {
            let n = need(args.n, "--n", "cycle")?;
            (graph::cycle(n), json!({ "n": n }))
        }
        Generator::Path => {
            let n = need(args.n, "--n", "path")?;
            (graph::path(n), json!({ "n": n }))
        }
        Generator::Complete => {
            let n = need(args.n, "--n", "complete")?;
            (graph::complete(n), json!({ "n": n }))
        }
        Generator::Bipartite => {
            let a = need(args.a, "--a", "bipartite")?;
            let b = need(args.b, "--b", "bipartite")?;
            (graph::complete_bipartite(a, b), json!({ "a": a, "b": b }))
        }
        Generator::Petersen => (graph::petersen(), json!({})),
        Generator::Pg => {
            let q = need(args.q, "--q", "pg")?;
            (graph::projective_plane_incidence(q)?, json!({ "q": q }))
        }
        Generator::RandomC4Free => {
            let n = need(args.n, "--n", "random-c4-free")?;
            let r = graph::random_c4_free(n, args.target_degree, args.seed);
            let params = json!({
                "n": n,
                "seed": args.seed,
                "target_min_degree": r.target_min_degree,
                "achieved_min_degree": r.achieved_min_degree,
                "target_met": r.target_met,
            });
            (r.graph, params)
        }
    };
    let name = generator.to_possible_value().expect("no skipped variants");
    Ok((g, json!({ "gen": name.get_name(), "params": params })))
}

fn graph_summary(g: &Graph) -> std::result::Result<Value, Failure> {
    Ok(json!({
        "graph6": graph::to_graph6(g)?,
        "order": g.order(),
        "edges": g.edge_count(),
        "facts": report::to_value(&g.facts()),
    }))
}

fn diag(args: &DiagArgs, exec: Exec) -> CmdResult {
    let (g, source) = load_graph(&args.graph)?;
    let primary = if args.fast_path {
        diagdist::theorem_a_value(&g)?
    } else {
        diagdist::diagonal_distance_with(&g, exec)?
    };
    let mut checks = Vec::new();
    let mut agree = true;
    if args.fast_path {
        let s = diagdist::diagonal_distance_with(&g, exec)?;
        agree &= s.value == primary.value;
        checks.push(json!({ "method": s.method, "value": s.value, "agrees": s.value == primary.value }));
    }
    if args.oracle {
        let o = diagdist::oracle_diagonal_distance_with(&g, args.oracle_cap, exec)?;
        agree &= o.value == primary.value;
        checks.push(json!({ "method": o.method, "value": o.value, "agrees": o.value == primary.value }));
    }
    Ok(Outcome {
        inputs: json!({
            "graph": source,
            "oracle": args.oracle,
            "fast_path": args.fast_path,
            "oracle_cap": args.oracle_cap,
        }),
        results: json!({
            "graph": graph_summary(&g)?,
            "diag_distance": primary.value,
            "method": primary.method,
            "witness_u": primary.witness_u,
            "witness_pauli": primary.witness_pauli.to_string(),
            "cross_checks": checks,
            "agree": agree,
        }),
        falsified: !agree,
    })
}

fn classify(args: &ClassifyArgs, exec: Exec) -> CmdResult {
    let m = CwsCode::from_text(&read(&args.code)?)?;
    let opts = ClassifyOptions {
        weight_cap: args.max_weight,
        exec,
        ..ClassifyOptions::default()
    };
    let r = cws::degeneracy_classify_with(&m, opts)?;
    let check = if r.verdict == Verdict::Degenerate {
        Some(cws::check_necessary_conditions(&m, &r)?)
    } else {
        None
    };
    let falsified = check.as_ref().is_some_and(|c| c.outcome == CheckOutcome::Fail);
    Ok(Outcome {
        inputs: json!({ "code": args.code, "max_weight": args.max_weight }),
        results: json!({
            "graph": graph_summary(m.graph())?,
            "k": m.code().size(),
            "distance": r.distance.to_string(),
            "report": report::to_value(&r),
            "necessary_check": check.map(|c| report::to_value(&c)),
        }),
        falsified,
    })
}

fn search(args: &SearchArgs, exec: Exec) -> CmdResult {
    let (g, source) = load_graph(&args.graph)?;
    let mut budget = CliqueBudget::default();
    if let Some(nodes) = args.budget {
        budget.max_nodes = nodes;
    }
    if let Some(t) = args.time_limit {
        budget.time_limit = Some(Duration::from_secs_f64(t.max(0.0)));
    }
    let mode = match args.mode {
        Mode::Exact => CliqueMode::Exact,
        Mode::Greedy => CliqueMode::Greedy {
            restarts: args.restarts,
            seed: args.graph.seed,
        },
    };
    let opts = SearchOptions {
        mode,
        budget,
        exec,
        ..SearchOptions::default()
    };
    let r = search::search_code_with(&g, args.d, opts)?;
    Ok(Outcome {
        inputs: json!({
            "graph": source,
            "d": args.d,
            "mode": format!("{:?}", args.mode).to_lowercase(),
            "max_nodes": budget.max_nodes,
            "time_limit_s": budget.time_limit.map(|t| t.as_secs_f64()),
            "restarts": args.restarts,
            "seed": args.graph.seed,
        }),
        results: json!({
            "k": r.k(),
            "verified": r.verified_d.to_string(),
            "search": report::to_value(&r),
        }),
        falsified: r.verified_d.at_least() < args.d,
    })
}

fn run_verify(args: &VerifyArgs, exec: Exec) -> CmdResult {
    let suites: Vec<Suite> = if args.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![args.suite.parse()?]
    };
    let cfg = SuiteConfig {
        max_n: args.max_n,
        random: args.random,
        seed: args.seed,
        instances: args.instances,
        instance_max_n: args.instance_max_n,
        exec,
    };
    let mut reports = Vec::new();
    for s in &suites {
        reports.push(verify::run_suite(*s, &cfg)?);
    }
    let passed = reports.iter().all(|r| r.passed());
    Ok(Outcome {
        inputs: json!({
            "suites": suites,
            "max_n": args.max_n,
            "seed": args.seed,
            "random": args.random,
            "instances": args.instances,
            "instance_max_n": args.instance_max_n,
        }),
        results: json!({
            "passed": passed,
            "failures": reports.iter().map(|r| r.failures()).sum::<usize>(),
            "suites": report::to_value(&reports),
        }),
        falsified: !passed,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let name = cli.command.name();
    let start = Instant::now();
    let result = match &cli.command {
        Command::Diag(a) => diag(a, exec),
        Command::Classify(a) => classify(a, exec),
        Command::Search(a) => search(a, exec),
        Command::Verify(a) => run_verify(a, exec),
    };
    let out = cli.out.as_deref();
    let (emitted, code) = match result {
        Ok(o) => {
            let doc = Report {
                schema_version: report::SCHEMA_VERSION,
                command: name,
                inputs: o.inputs,
                results: o.results,
                timing: Timing {
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                },
            };
            if o.falsified {
                eprintln!("cwsdiag {name}: counterexample or disagreement found");
            }
            let code = if o.falsified { report::EXIT_FALSIFIED } else { report::EXIT_OK };
            (report::emit(&doc, out), code)
        }
        Err(e) => {
            eprintln!("cwsdiag {name}: {e}");
            let code = e.exit_code();
            let doc = ErrorReport {
                schema_version: report::SCHEMA_VERSION,
                command: name,
                error: ErrorBody {
                    kind: e.kind().to_string(),
                    message: e.to_string(),
                    exit_code: code,
                },
            };
            (report::emit(&doc, out), code)
        }
    };
    if let Err(e) = emitted {
        eprintln!("cwsdiag: cannot write report: {e}");
        return ExitCode::from(report::EXIT_OTHER);
    }
    ExitCode::from(code)
}

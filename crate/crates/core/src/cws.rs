//! CWS codes in standard form: a graph `G` (stabilizers `S_i = X(e_i)Z(r_i)`, never
//! materialized) together with a classical code `C` whose words give the word
//! operators `Z(c)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::diagdist::{self, cls_map_into};
use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::graph::{self, Girth, Graph};
use crate::par::{self, Exec};
use crate::pauli::{paulis_on_support, PauliVector};
use crate::subsets::{binomial, Combinations};

/// Largest generator rank expanded into an explicit word list.
pub const MAX_LINEAR_RANK: usize = 20;

/// Above this many ordered word pairs the difference set is not materialized.
pub const DIFFERENCE_SET_CAP: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    Explicit,
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassicalCode {
    length: usize,
    kind: CodeKind,
    words: Vec<BitVector>,
    #[serde(skip)]
    generator: Option<BitMatrix>,
}

impl ClassicalCode {
    /// A nonempty list of distinct words of one length.
    pub fn explicit(words: Vec<BitVector>) -> Result<Self> {
        let Some(first) = words.first() else {
            return Err(Error::Domain("a code needs at least one word".into()));
        };
        let length = first.len();
        if let Some(w) = words.iter().find(|w| w.len() != length) {
            return Err(Error::Dimension(format!("word {w} has length {}, expected {length}", w.len())));
        }
        let mut seen = HashSet::with_capacity(words.len());
        if let Some(w) = words.iter().find(|w| !seen.insert(*w)) {
            return Err(Error::Domain(format!("word {w} listed twice")));
        }
        Ok(ClassicalCode {
            length,
            kind: CodeKind::Explicit,
            words,
            generator: None,
        })
    }

    /// The row span of `generator`, expanded; `2^rank` words.
    pub fn linear(generator: BitMatrix) -> Result<Self> {
        let rank = generator.rank();
        if rank > MAX_LINEAR_RANK {
            return Err(Error::Budget(format!(
                "rank {rank} code has too many words to expand (cap is rank {MAX_LINEAR_RANK})"
            )));
        }
        let length = generator.num_cols();
        // basis of the row space: keep each row that raises the rank
        let mut basis: Vec<BitVector> = Vec::with_capacity(rank);
        for row in generator.rows() {
            let mut trial = basis.clone();
            trial.push(row.clone());
            if BitMatrix::from_rows(length, trial)?.rank() > basis.len() {
                basis.push(row.clone());
            }
        }
        let mut words = Vec::with_capacity(1 << rank);
        for mask in 0u64..1 << rank {
            let mut w = BitVector::zeros(length);
            for (i, b) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    w.xor_words(b.words());
                }
            }
            words.push(w);
        }
        Ok(ClassicalCode {
            length,
            kind: CodeKind::Linear,
            words,
            generator: Some(generator),
        })
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn words(&self) -> &[BitVector] {
        &self.words
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn generator(&self) -> Option<&BitMatrix> {
        self.generator.as_ref()
    }
}

/// Minimum Hamming distance between distinct words.
pub fn classical_distance(code: &ClassicalCode) -> Result<usize> {
    let words = code.words();
    if words.len() < 2 {
        return Err(Error::Domain(format!(
            "distance is undefined for a code with {} word",
            words.len()
        )));
    }
    if code.kind() == CodeKind::Linear {
        return Ok(words.iter().filter(|w| !w.is_zero()).map(BitVector::weight).min().expect("K ≥ 2"));
    }
    let mut best = usize::MAX;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            best = best.min(a.xor(b).expect("one length").weight());
        }
    }
    Ok(best)
}

/// Coordinates that are zero in every word.
pub fn classical_degenerate_components(code: &ClassicalCode) -> Vec<usize> {
    let mut used = BitVector::zeros(code.length());
    for w in code.words() {
        used = used.or(w).expect("one length");
    }
    (0..code.length()).filter(|&i| !used.get(i)).collect()
}

#[derive(Debug, Clone)]
enum Differences {
    Table(HashSet<BitVector>),
    Pairwise(HashSet<BitVector>),
}

#[derive(Debug, Clone)]
pub struct CwsCode {
    graph: Graph,
    code: ClassicalCode,
    differences: Differences,
}

impl PartialEq for CwsCode {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph && self.code == other.code
    }
}

impl Eq for CwsCode {}

impl CwsCode {
    pub fn new(graph: Graph, code: ClassicalCode) -> Result<Self> {
        if code.length() != graph.order() {
            return Err(Error::Dimension(format!(
                "code of length {} on a graph of order {}",
                code.length(),
                graph.order()
            )));
        }
        let k = code.size();
        let differences = if k.saturating_mul(k) <= DIFFERENCE_SET_CAP {
            let mut set = HashSet::with_capacity(k * k.saturating_sub(1) / 2);
            for (i, a) in code.words().iter().enumerate() {
                for b in &code.words()[i + 1..] {
                    set.insert(a.xor(b).expect("one length"));
                }
            }
            Differences::Table(set)
        } else {
            Differences::Pairwise(code.words().iter().cloned().collect())
        };
        Ok(CwsCode {
            graph,
            code,
            differences,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn code(&self) -> &ClassicalCode {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.graph.order()
    }

    /// `s ∈ {c_i ⊕ c_j : i ≠ j}`.
    pub fn is_difference(&self, s: &BitVector) -> bool {
        match &self.differences {
            Differences::Table(set) => set.contains(s),
            Differences::Pairwise(words) => {
                !s.is_zero() && self.code.words().iter().any(|c| words.contains(&c.xor(s).expect("one length")))
            }
        }
    }

    /// Parse the text format: a graph6 line, then one codeword bitstring per line.
    /// Blank lines and `#` comments are skipped.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let head = lines
            .next()
            .ok_or_else(|| Error::Parse("code file is empty".into()))?;
        let g = graph::from_graph6(head)?;
        let words = lines
            .map(|l| l.parse::<BitVector>())
            .collect::<Result<Vec<_>>>()?;
        if words.is_empty() {
            return Err(Error::Parse("code file lists no codewords".into()));
        }
        let code = ClassicalCode::explicit(words).map_err(|e| Error::Parse(e.to_string()))?;
        CwsCode::new(g, code).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> Result<String> {
        let mut out = graph::to_graph6(&self.graph)?;
        out.push('\n');
        for w in self.code.words() {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        Ok(out)
    }
}

impl FromStr for CwsCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CwsCode::from_text(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetectionReason {
    Detected,
    /// `Cl_S(E)` is a difference of two codewords.
    ImageIsDifference,
    /// `Cl_S(E) = 0` and `E` anticommutes with some `Z(c)`.
    AnticommutesWithWord,
}

impl fmt::Display for DetectionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DetectionReason::Detected => "detected",
            DetectionReason::ImageIsDifference => "image is a codeword difference",
            DetectionReason::AnticommutesWithWord => "image is zero and the error anticommutes with a word operator",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Detection {
    pub detected: bool,
    pub reason: DetectionReason,
    pub image: BitVector,
}

pub fn detects_error(m: &CwsCode, e: &PauliVector) -> Result<Detection> {
    if e.num_qubits() != m.n() {
        return Err(Error::Dimension(format!("{}-qubit error on a {}-qubit code", e.num_qubits(), m.n())));
    }
    if e.is_identity() {
        return Err(Error::Contract("detection is asked of non-identity errors only".into()));
    }
    let mut image = BitVector::zeros(m.n());
    let reason = classify_detection(m, e, &mut image);
    Ok(Detection {
        detected: reason == DetectionReason::Detected,
        reason,
        image,
    })
}

fn classify_detection(m: &CwsCode, e: &PauliVector, image: &mut BitVector) -> DetectionReason {
    cls_map_into(&m.graph, e, image);
    if m.is_difference(image) {
        return DetectionReason::ImageIsDifference;
    }
    if image.is_zero() && m.code.words().iter().any(|c| c.dot(e.x_part()).expect("one length")) {
        return DetectionReason::AnticommutesWithWord;
    }
    DetectionReason::Detected
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum DistanceStatus {
    /// A weight-`d` error escapes detection and all lighter ones are caught.
    Exact { d: usize, witness: PauliVector, reason: DetectionReason },
    /// Every error of weight `< w` is detected; nothing above was searched.
    LowerBound { w: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceResult {
    #[serde(flatten)]
    pub status: DistanceStatus,
    /// Largest weight fully enumerated.
    pub searched_weight: usize,
}

impl DistanceResult {
    pub fn exact(&self) -> Option<usize> {
        match self.status {
            DistanceStatus::Exact { d, .. } => Some(d),
            DistanceStatus::LowerBound { .. } => None,
        }
    }

    /// `d` for an exact result, `w` for a lower bound: the distance is at least this.
    pub fn at_least(&self) -> usize {
        match self.status {
            DistanceStatus::Exact { d, .. } => d,
            DistanceStatus::LowerBound { w } => w,
        }
    }
}

impl fmt::Display for DistanceResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            DistanceStatus::Exact { d, witness, .. } => write!(f, "exact({d}) via {witness}"),
            DistanceStatus::LowerBound { w } => write!(f, "lower_bound({w})"),
        }
    }
}

pub fn distance(m: &CwsCode, max_weight: usize) -> Result<DistanceResult> {
    distance_with(m, max_weight, Exec::default())
}

/// Enumerate errors by ascending weight, supports in lexicographic order; the first
/// undetected error in that order is the witness.
pub fn distance_with(m: &CwsCode, max_weight: usize, exec: Exec) -> Result<DistanceResult> {
    let n = m.n();
    if max_weight > n {
        return Err(Error::Contract(format!("max weight {max_weight} exceeds {n} qubits")));
    }
    for w in 1..=max_weight {
        if let Some((witness, reason)) = first_undetected(m, w, exec) {
            return Ok(DistanceResult {
                status: DistanceStatus::Exact { d: w, witness, reason },
                searched_weight: w,
            });
        }
    }
    Ok(DistanceResult {
        status: DistanceStatus::LowerBound { w: max_weight + 1 },
        searched_weight: max_weight,
    })
}

fn first_undetected(m: &CwsCode, w: usize, exec: Exec) -> Option<(PauliVector, DetectionReason)> {
    let n = m.n();
    let supports: Vec<Vec<usize>> = Combinations::new(n, w).collect();
    par::find_map_first(exec, supports.len(), |k| {
        let mut image = BitVector::zeros(n);
        paulis_on_support(n, &supports[k]).find_map(|e| {
            let reason = classify_detection(m, &e, &mut image);
            (reason != DetectionReason::Detected).then_some((e, reason))
        })
    })
}

/// Number of errors of weight 1..=w.
fn errors_up_to(n: usize, w: usize) -> u128 {
    (1..=w).map(|k| binomial(n, k).saturating_mul(3u128.saturating_pow(k as u32))).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Degenerate,
    Nondegenerate,
    Unresolved,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Degenerate => "degenerate",
            Verdict::Nondegenerate => "nondegenerate",
            Verdict::Unresolved => "unresolved",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecialCase {
    /// K = 1: every error is detected, so the distance is not defined.
    SingleWord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessaryConditions {
    /// Girth at most four.
    pub has_short_cycle: bool,
    pub classically_degenerate: bool,
    pub degenerate_components: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegeneracyReport {
    pub verdict: Verdict,
    pub diag_distance: usize,
    pub distance: DistanceResult,
    pub necessary_conditions: NecessaryConditions,
    pub special_case: Option<SpecialCase>,
    /// Weight up to which errors were enumerated.
    pub budget: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    /// Search at least this deep even when Δ′ + 1 is smaller.
    pub weight_cap: usize,
    /// Upper bound on the number of errors enumerated.
    pub max_errors: u128,
    pub exec: Exec,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            weight_cap: 0,
            max_errors: 1 << 28,
            exec: Exec::default(),
        }
    }
}

pub fn degeneracy_classify(m: &CwsCode) -> Result<DegeneracyReport> {
    degeneracy_classify_with(m, ClassifyOptions::default())
}

/// Compare the distance against Δ′. The search budget is `max(Δ′ + 1, weight_cap)`,
/// clipped to `n` and to the error-count ceiling; a budget below Δ′ that finds
/// nothing leaves the verdict unresolved.
pub fn degeneracy_classify_with(m: &CwsCode, opts: ClassifyOptions) -> Result<DegeneracyReport> {
    let g = m.graph();
    let n = g.order();
    let diag = diagdist::diagonal_distance_with(g, opts.exec)?.value;
    let mut budget = (diag + 1).max(opts.weight_cap).min(n);
    while budget > 0 && errors_up_to(n, budget) > opts.max_errors {
        budget -= 1;
    }
    let distance = distance_with(m, budget, opts.exec)?;
    let special_case = (m.code().size() == 1).then_some(SpecialCase::SingleWord);
    let verdict = match (&distance.status, special_case) {
        (_, Some(SpecialCase::SingleWord)) => Verdict::Degenerate,
        (DistanceStatus::Exact { d, .. }, None) if *d <= diag => Verdict::Nondegenerate,
        (DistanceStatus::Exact { .. }, None) => Verdict::Degenerate,
        (DistanceStatus::LowerBound { w }, None) if *w > diag => Verdict::Degenerate,
        (DistanceStatus::LowerBound { .. }, None) => Verdict::Unresolved,
    };
    let degenerate_components = classical_degenerate_components(m.code());
    Ok(DegeneracyReport {
        verdict,
        diag_distance: diag,
        distance,
        necessary_conditions: NecessaryConditions {
            has_short_cycle: g.girth().has_short_cycle(),
            classically_degenerate: !degenerate_components.is_empty(),
            degenerate_components,
        },
        special_case,
        budget,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckOutcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessaryCheck {
    pub outcome: CheckOutcome,
    /// Short cycle, or some coordinate unused by the code.
    pub disjunction_holds: bool,
    pub girth: Girth,
    pub min_degree_vertices: Vec<usize>,
    /// Only asked when the girth is at least five.
    pub min_degree_all_degenerate: Option<bool>,
    pub detail: String,
}

/// Check the necessary conditions for degeneracy: a 3- or 4-cycle, or a
/// classically degenerate code; with girth at least five, every minimum-degree
/// coordinate must be degenerate. The report is recomputed first and rejected if
/// it does not match.
pub fn check_necessary_conditions(m: &CwsCode, report: &DegeneracyReport) -> Result<NecessaryCheck> {
    let opts = ClassifyOptions {
        weight_cap: report.budget,
        ..ClassifyOptions::default()
    };
    let fresh = degeneracy_classify_with(m, opts)?;
    if fresh.verdict != report.verdict
        || fresh.diag_distance != report.diag_distance
        || fresh.distance.status != report.distance.status
    {
        return Err(Error::Contract(format!(
            "report is inconsistent with the code: it claims {} with Δ′ = {} and distance {}, recomputation gives {} with Δ′ = {} and distance {}",
            report.verdict, report.diag_distance, report.distance, fresh.verdict, fresh.diag_distance, fresh.distance
        )));
    }
    if report.verdict != Verdict::Degenerate {
        return Err(Error::Contract(format!(
            "necessary conditions apply to degenerate codes, verdict is {}",
            report.verdict
        )));
    }
    let g = m.graph();
    let girth = g.girth();
    let v_min = g.min_degree_vertices();
    if report.special_case.is_some() {
        return Ok(NecessaryCheck {
            outcome: CheckOutcome::NotApplicable,
            disjunction_holds: true,
            girth,
            min_degree_vertices: v_min,
            min_degree_all_degenerate: None,
            detail: "single-word code; degenerate by convention only".into(),
        });
    }
    let nc = &fresh.necessary_conditions;
    let disjunction_holds = nc.has_short_cycle || nc.classically_degenerate;
    let min_degree_all_degenerate =
        girth.at_least(5).then(|| v_min.iter().all(|v| nc.degenerate_components.contains(v)));
    let pass = disjunction_holds && min_degree_all_degenerate != Some(false);
    let detail = if !disjunction_holds {
        format!("girth {girth} and no degenerate coordinate")
    } else if min_degree_all_degenerate == Some(false) {
        format!(
            "girth {girth} but minimum-degree vertices {v_min:?} are not all among degenerate coordinates {:?}",
            nc.degenerate_components
        )
    } else if nc.has_short_cycle {
        format!("girth {girth}")
    } else {
        format!("degenerate coordinates {:?}", nc.degenerate_components)
    };
    Ok(NecessaryCheck {
        outcome: if pass { CheckOutcome::Pass } else { CheckOutcome::Fail },
        disjunction_holds,
        girth,
        min_degree_vertices: v_min,
        min_degree_all_degenerate,
        detail,
    })
}

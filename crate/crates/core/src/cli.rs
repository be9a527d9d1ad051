//! Command-line front end. Exit codes: 0 success, 1 failed verification, 2 bad input,
//! 3 cap exceeded, 4 I/O error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::covering::{weak11_upper_bound, OVERLAP_CAP};
use crate::exact::{
    closed_form_constants, complete_strong_value, isoclass_norm_exact, restricted_norm, star_strong_value,
    strong_norm_exact, weak_norm_delta_lower, ClosedForm, NormKind, NormResult, OperatorNorm, RESTRICTED_CAP,
};
use crate::function::{ExactFunction, FloatFunction};
use crate::graph::{enumerate_connected, named_graph, Family, Graph};
use crate::maximal::{delta_response_matrix, eval_isoclass_maximal, eval_maximal, reconstruct_from_deltas, DeltaResponseMatrix};
use crate::number::{format_ratio, rational, Exponent, Number};
use crate::numeric::{strong_norm_estimate, weak_norm_estimate, OptimizerConfig};
use crate::report::{IndexJson, NormReport};
use crate::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Largest `n_max` accepted by `verify` and `search-monotonicity`.
pub const VERIFY_CAP: usize = 7;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Cap(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Cap(_) => EXIT_CAP,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "graphmax", version, about = "Maximal operators on finite connected graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operator norm of M_G.
    Norm(NormArgs),
    /// Exhaustive checks over all connected graphs up to n_max vertices.
    Verify(VerifyArgs),
    /// Looks for G1 ⊂ G2 with ‖M_G1‖₁ < ‖M_G2‖₁.
    SearchMonotonicity(SearchArgs),
    /// Tables of norms over families, sizes and exponents.
    Sweep(SweepArgs),
    /// Dilation and overlapping indices.
    Indices(IndicesArgs),
    /// The matrix of responses M_G δ_k, or the graph recovered from one.
    DeltaMatrix(DeltaArgs),
    /// Evaluates M_G f (or M_[G] f) exactly.
    Maximal(MaximalArgs),
}

#[derive(Args, Debug, Clone)]
struct GraphSource {
    /// Named family.
    #[arg(long, value_enum, requires = "n", conflicts_with = "edges")]
    family: Option<FamilyArg>,
    /// Edge-list file (`n m` then `u v` lines, 1-based) or graph JSON.
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Number of vertices for --family.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum FamilyArg {
    Complete,
    Star,
    Path,
    Cycle,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Complete => Family::Complete,
            FamilyArg::Star => Family::Star,
            FamilyArg::Path => Family::Path,
            FamilyArg::Cycle => Family::Cycle,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum KindArg {
    Strong,
    Weak,
    Restricted,
    Isoclass,
}

impl From<KindArg> for OperatorNorm {
    fn from(k: KindArg) -> OperatorNorm {
        match k {
            KindArg::Strong => OperatorNorm::Strong,
            KindArg::Weak => OperatorNorm::Weak,
            KindArg::Restricted => OperatorNorm::Restricted,
            KindArg::Isoclass => OperatorNorm::Isoclass,
        }
    }
}

#[derive(Args, Debug)]
struct NormArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// Exponent: decimal, `a/b` or `inf`.
    #[arg(long)]
    p: String,
    #[arg(long, value_enum, default_value = "strong")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random starts for the optimizer (default 16 + n).
    #[arg(long)]
    restarts: Option<usize>,
    /// Largest n for the restricted-type subset scan.
    #[arg(long, default_value_t = RESTRICTED_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long = "n-max")]
    n_max: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long = "n-max")]
    n_max: usize,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    family: Vec<FamilyArg>,
    /// Sizes: `a..b` (inclusive), a comma list, or one value.
    #[arg(long)]
    n: String,
    /// Comma-separated exponents.
    #[arg(long)]
    p: String,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "strong")]
    kind: Vec<KindArg>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest n for the restricted-type subset scan.
    #[arg(long, default_value_t = RESTRICTED_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct IndicesArgs {
    #[command(flatten)]
    graph: GraphSource,
    #[arg(long)]
    skip_overlap: bool,
    /// Largest n for the exact overlapping index.
    #[arg(long, default_value_t = OVERLAP_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
struct DeltaArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// Reads a matrix JSON file and prints the graph it comes from.
    #[arg(long, conflicts_with_all = ["family", "edges"])]
    reconstruct: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MaximalArgs {
    #[command(flatten)]
    graph: GraphSource,
    /// One value per line (decimal or `a/b`).
    #[arg(long)]
    function: PathBuf,
    /// Evaluate M_[G] instead of M_G.
    #[arg(long)]
    isoclass: bool,
}

/// Runs the CLI on `args` (including the program name), writing results to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let result = match cli.command {
        Command::Norm(a) => cmd_norm(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::SearchMonotonicity(a) => cmd_search(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Indices(a) => cmd_indices(a, out),
        Command::DeltaMatrix(a) => cmd_delta(a, out),
        Command::Maximal(a) => cmd_maximal(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.code()
        }
    }
}

fn configure_threads() {
    if let Some(n) = std::env::var("GM_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_graph(src: &GraphSource) -> CliResult<Graph> {
    match (&src.family, &src.edges) {
        (Some(f), _) => {
            let n = src.n.ok_or_else(|| CliError::Input("--family needs --n".into()))?;
            Ok(named_graph((*f).into(), n)?)
        }
        (None, Some(path)) => {
            let text = read_file(path)?;
            if text.trim_start().starts_with('{') {
                Ok(Graph::from_json(&text)?)
            } else {
                Ok(Graph::from_text(&text)?)
            }
        }
        (None, None) => Err(CliError::Input("give --family with --n, or --edges FILE".into())),
    }
}

fn parse_exponent(s: &str) -> CliResult<Exponent> {
    s.parse::<Exponent>().map_err(CliError::from)
}

fn emit(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// Recognizes the named families so closed-form brackets can be attached.
fn family_of(g: &Graph) -> Option<Family> {
    if g.is_complete() {
        Some(Family::Complete)
    } else if g.is_star() {
        Some(Family::Star)
    } else if g.is_path() {
        Some(Family::Path)
    } else {
        None
    }
}

fn compute_norm(g: &Graph, p: &Exponent, kind: OperatorNorm, cfg: &OptimizerConfig, cap: usize) -> CliResult<NormResult> {
    let mut result = match kind {
        OperatorNorm::Strong if p.is_infinite() || p.value() <= 1.0 || p.is_one() => strong_norm_exact(g, p)?,
        OperatorNorm::Strong => strong_norm_estimate(g, p, cfg)?,
        OperatorNorm::Weak => {
            let lower = weak_norm_delta_lower(g, p)?;
            let est = weak_norm_estimate(g, p, cfg)?;
            if est.to_f64() > lower.to_f64() + 1e-12 {
                let mut est = est;
                est.notes.push(format!("delta lower bound {}", lower.value));
                est
            } else {
                let mut lower = lower;
                lower.optimizer = est.optimizer;
                lower.notes.push("optimizer found nothing above the delta bound".into());
                lower
            }
        }
        OperatorNorm::Restricted => {
            if g.n() > cap {
                return Err(Error::CapExceeded { what: "restricted-type subset scan", n: g.n(), cap }.into());
            }
            restricted_norm(g, p)?
        }
        OperatorNorm::Isoclass => isoclass_norm_exact(g, p)?,
    };
    if result.bounds.is_none() && matches!(kind, OperatorNorm::Strong | OperatorNorm::Weak) {
        if let Some(cf) = family_of(g).and_then(|f| closed_form_constants(f, g.n(), p, kind).ok()) {
            if let (Some(lo), Some(hi)) = (cf.lower(), cf.upper()) {
                result.bounds = Some((lo, hi));
            }
        }
    }
    Ok(result)
}

fn cmd_norm(a: NormArgs, out: &mut dyn Write) -> CliResult<i32> {
    let g = load_graph(&a.graph)?;
    let p = parse_exponent(&a.p)?;
    let mut cfg = OptimizerConfig::for_size(g.n()).with_seed(a.seed);
    if let Some(r) = a.restarts {
        cfg = cfg.with_restarts(r);
    }
    let result = compute_norm(&g, &p, a.kind.into(), &cfg, a.cap)?;
    let report = NormReport::new(&g, &result, a.seed);
    let text = match a.format {
        Format::Json => to_json(&report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["n", "norm", "p", "kind", "value", "value_f64", "seed"]).map_err(csv_err)?;
            w.write_record([
                g.n().to_string(),
                report.norm.clone(),
                report.p.clone(),
                report.kind.clone(),
                report.value.clone(),
                report.value_f64.to_string(),
                report.seed.to_string(),
            ])
            .map_err(csv_err)?;
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?).expect("csv is utf-8")
        }
        Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "seed      {}", report.seed);
            let _ = writeln!(s, "graph     n={} m={}", g.n(), g.edge_count());
            let _ = writeln!(s, "norm      {}", report.norm);
            let _ = writeln!(s, "p         {}", report.p);
            let _ = writeln!(s, "kind      {}", report.kind);
            let _ = writeln!(s, "value     {}", report.value);
            if let Some(w) = &report.witness {
                let _ = writeln!(s, "witness   {}", w.join(" "));
            }
            if let Some([lo, hi]) = report.bounds {
                let _ = writeln!(s, "bounds    [{lo}, {hi}]");
            }
            for note in &report.notes {
                let _ = writeln!(s, "note      {note}");
            }
            s
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}

fn edge_string(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(u, v)| format!("{}-{}", u + 1, v + 1)).collect();
    format!("[{}]", edges.join(" "))
}

struct Check {
    name: String,
    failures: Vec<String>,
    graphs: usize,
}

fn check_extremal(graphs: &[Graph], n: usize, p: &Exponent) -> Vec<String> {
    graphs
        .par_iter()
        .filter_map(|g| {
            let v = strong_norm_exact(g, p).ok()?.value;
            let (lower, upper, close) = if p.is_one() {
                let lo = Number::Rational(BigRational::one() + rational(n as i64 - 1, n as i64));
                let hi = Number::Rational(rational(n as i64 + 1, 2));
                (lo, hi, None)
            } else {
                let lo = Number::Float(complete_strong_value(n, p.value()));
                let hi = Number::Float(star_strong_value(n, p.value()));
                (lo, hi, Some(1e-12))
            };
            let eq = |a: &Number, b: &Number| match close {
                None => a == b,
                Some(t) => (a.to_f64() - b.to_f64()).abs() <= t * b.to_f64().abs(),
            };
            let inside = (lower < v || eq(&lower, &v)) && (v < upper || eq(&v, &upper));
            let ok = inside && eq(&v, &lower) == g.is_complete() && eq(&v, &upper) == g.is_star();
            (!ok).then(|| format!("{} norm={} bounds=[{}, {}]", edge_string(g), v, lower, upper))
        })
        .collect()
}

fn check_reconstruction(graphs: &[Graph]) -> Vec<String> {
    graphs
        .par_iter()
        .filter_map(|g| match reconstruct_from_deltas(&delta_response_matrix(g)) {
            Ok(h) if h == *g => None,
            Ok(h) => Some(format!("{} reconstructed as {}", edge_string(g), edge_string(&h))),
            Err(e) => Some(format!("{}: {e}", edge_string(g))),
        })
        .collect()
}

fn check_complete_minimal(graphs: &[Graph], n: usize, seed: u64) -> Vec<String> {
    let k = named_graph(Family::Complete, n).expect("n >= 2");
    graphs
        .par_iter()
        .enumerate()
        .filter_map(|(i, g)| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(((n as u64) << 32) | i as u64);
            for _ in 0..10 {
                let f = FloatFunction::new((0..n).map(|_| rng.gen::<f64>()).collect());
                let mk = eval_maximal(&k, &f).ok()?;
                let mg = eval_maximal(g, &f).ok()?;
                if !mk.le_pointwise(&mg, &1e-12) {
                    return Some(format!("{} f={:?}", edge_string(g), f.values()));
                }
            }
            None
        })
        .collect()
}

fn check_index_bound(graphs: &[Graph], n: usize, seed: u64) -> Vec<String> {
    let one = Exponent::one();
    graphs
        .par_iter()
        .filter_map(|g| {
            let report = match weak11_upper_bound(g, false, OVERLAP_CAP) {
                Ok(r) => r,
                Err(e) => return Some(format!("{}: {e}", edge_string(g))),
            };
            let bound = Number::Rational(report.weak11_upper.clone());
            let lower = weak_norm_delta_lower(g, &one).ok()?.value;
            let est = weak_norm_estimate(g, &one, &OptimizerConfig::for_size(n).with_seed(seed)).ok()?.to_f64();
            let ok = lower <= bound && est <= bound.to_f64() + 1e-9;
            (!ok).then(|| format!("{} delta={} estimate={} min(D,O)={}", edge_string(g), lower, est, bound))
        })
        .collect()
}

/// The six connected graphs on four vertices with their `‖M_G‖₁`.
pub fn four_vertex_table() -> Vec<(&'static str, Graph, BigRational)> {
    let build = |e: &[(usize, usize)]| Graph::from_edges_one_based(4, e).expect("valid graph");
    vec![
        ("L4", build(&[(1, 2), (2, 3), (3, 4)]), rational(13, 6)),
        ("C4", build(&[(1, 2), (2, 3), (3, 4), (4, 1)]), rational(23, 12)),
        ("S4", build(&[(1, 2), (1, 3), (1, 4)]), rational(5, 2)),
        ("K4", build(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]), rational(7, 4)),
        ("D4", build(&[(1, 2), (2, 3), (3, 4), (4, 1), (2, 4)]), rational(23, 12)),
        ("P4", build(&[(1, 2), (2, 3), (2, 4), (3, 4)]), rational(13, 6)),
    ]
}

fn check_four_vertex() -> Vec<String> {
    four_vertex_table()
        .into_iter()
        .filter_map(|(name, g, want)| {
            let got = strong_norm_exact(&g, &Exponent::one()).ok()?.value;
            (got != Number::Rational(want.clone())).then(|| format!("{name}: got {got}, expected {}", format_ratio(&want)))
        })
        .collect()
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> CliResult<i32> {
    if a.n_max > VERIFY_CAP {
        return Err(Error::CapExceeded { what: "verify", n: a.n_max, cap: VERIFY_CAP }.into());
    }
    emit(out, &format!("graphmax verify n_max={} seed={}\n", a.n_max, a.seed))?;
    let half = Exponent::ratio(1, 2).expect("valid");
    let one = Exponent::one();
    let mut any_failed = false;
    for n in 2..=a.n_max {
        let graphs: Vec<Graph> = enumerate_connected(n, true)?.collect();
        let mut checks = vec![
            Check { name: "extremal bounds p=1/2".into(), failures: check_extremal(&graphs, n, &half), graphs: graphs.len() },
            Check { name: "extremal bounds p=1".into(), failures: check_extremal(&graphs, n, &one), graphs: graphs.len() },
            Check { name: "reconstruction".into(), failures: check_reconstruction(&graphs), graphs: graphs.len() },
            Check {
                name: "complete graph pointwise minimal".into(),
                failures: check_complete_minimal(&graphs, n, a.seed),
                graphs: graphs.len(),
            },
            Check { name: "weak (1,1) index bound".into(), failures: check_index_bound(&graphs, n, a.seed), graphs: graphs.len() },
        ];
        if n == 4 {
            checks.push(Check { name: "four-vertex table".into(), failures: check_four_vertex(), graphs: 6 });
        }
        for c in checks {
            if c.failures.is_empty() {
                emit(out, &format!("PASS n={n} {} ({} graphs)\n", c.name, c.graphs))?;
            } else {
                any_failed = true;
                emit(out, &format!("FAIL n={n} {} ({} of {} graphs)\n", c.name, c.failures.len(), c.graphs))?;
                for f in &c.failures {
                    emit(out, &format!("  counterexample {f}\n"))?;
                }
            }
        }
    }
    emit(out, if any_failed { "verification FAILED\n" } else { "all checks passed\n" })?;
    Ok(if any_failed { EXIT_VERIFY } else { EXIT_OK })
}

/// Pairs `G1 ⊂ G2` differing in one edge, with `G1` ranging over class representatives,
/// where the norm goes up. Any violating pair on a common vertex set is joined by a chain
/// of single-edge additions, one step of which must also go up.
fn cmd_search(a: SearchArgs, out: &mut dyn Write) -> CliResult<i32> {
    if a.n_max > VERIFY_CAP {
        return Err(Error::CapExceeded { what: "search-monotonicity", n: a.n_max, cap: VERIFY_CAP }.into());
    }
    emit(out, &format!("graphmax search-monotonicity n_max={}\n", a.n_max))?;
    let one = Exponent::one();
    let mut total = 0;
    for n in 2..=a.n_max {
        let graphs: Vec<Graph> = enumerate_connected(n, true)?.collect();
        let results: Vec<(usize, Vec<String>)> = graphs
            .par_iter()
            .map(|g| {
                let base = strong_norm_exact(g, &one).expect("p = 1").value;
                let mut pairs = 0;
                let mut bad = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if g.adjacent(u, v) {
                            continue;
                        }
                        pairs += 1;
                        let h = g.with_edge(u, v).expect("adding an edge keeps connectivity");
                        let up = strong_norm_exact(&h, &one).expect("p = 1").value;
                        if up > base {
                            bad.push(format!("  G1={} norm={} G2={} norm={}", edge_string(g), base, edge_string(&h), up));
                        }
                    }
                }
                (pairs, bad)
            })
            .collect();
        let pairs: usize = results.iter().map(|r| r.0).sum();
        let bad: Vec<String> = results.into_iter().flat_map(|r| r.1).collect();
        emit(out, &format!("n={n} classes={} single-edge extensions={pairs} violations={}\n", graphs.len(), bad.len()))?;
        for line in &bad {
            emit(out, &format!("{line}\n"))?;
        }
        total += bad.len();
    }
    if total == 0 {
        emit(out, &format!("no counterexample up to n_max={}\n", a.n_max))?;
    } else {
        emit(out, &format!("{total} counterexamples up to n_max={}\n", a.n_max))?;
    }
    Ok(EXIT_OK)
}

fn parse_sizes(s: &str) -> CliResult<Vec<usize>> {
    let bad = || CliError::Input(format!("bad size list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect()
}

/// One row of a sweep table.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub family: String,
    pub p: String,
    pub norm_kind: String,
    pub result_kind: String,
    pub value: String,
    pub value_lo: f64,
    pub value_hi: Option<f64>,
    pub log_n: f64,
    pub power_sum: f64,
    pub two_n_over_n_minus_one: String,
}

fn sweep_row(family: Family, n: usize, p: &Exponent, kind: OperatorNorm, seed: u64, cap: usize) -> CliResult<SweepRow> {
    let g = named_graph(family, n)?;
    let result = match kind {
        // the delta bound keeps weak sweeps exact and fast on long paths
        OperatorNorm::Weak => weak_norm_delta_lower(&g, p)?,
        _ => compute_norm(&g, p, kind, &OptimizerConfig::for_size(n).with_seed(seed), cap)?,
    };
    let nf = n as f64;
    let pv = p.value();
    let power_sum = if p.is_one() { nf.ln() } else { (nf.powf(1.0 - pv) - 1.0) / (1.0 - pv) };
    let value_hi = match result.kind {
        NormKind::Exact => Some(result.to_f64()),
        _ => closed_form_constants(family, n, p, kind).ok().as_ref().and_then(ClosedForm::upper),
    };
    Ok(SweepRow {
        n,
        family: family.to_string(),
        p: p.to_string(),
        norm_kind: kind.to_string(),
        result_kind: result.kind.to_string(),
        value: result.value.to_string(),
        value_lo: result.to_f64(),
        value_hi,
        log_n: nf.ln(),
        power_sum,
        two_n_over_n_minus_one: format_ratio(&rational(2 * n as i64, n as i64 - 1)),
    })
}

/// Rows for every family × size × exponent × kind, in that nesting order.
pub fn sweep_rows(families: &[Family], sizes: &[usize], ps: &[Exponent], kinds: &[OperatorNorm], seed: u64, cap: usize) -> Result<Vec<SweepRow>, CliError> {
    let mut jobs = Vec::new();
    for &f in families {
        for &n in sizes {
            for p in ps {
                for &k in kinds {
                    jobs.push((f, n, p.clone(), k));
                }
            }
        }
    }
    jobs.par_iter().map(|(f, n, p, k)| sweep_row(*f, *n, p, *k, seed, cap)).collect()
}

fn cmd_sweep(a: SweepArgs, out: &mut dyn Write) -> CliResult<i32> {
    let sizes = parse_sizes(&a.n)?;
    let ps: Vec<Exponent> = a.p.split(',').map(parse_exponent).collect::<CliResult<_>>()?;
    if ps.is_empty() {
        return Err(CliError::Input("empty p grid".into()));
    }
    let families: Vec<Family> = a.family.iter().map(|&f| f.into()).collect();
    let kinds: Vec<OperatorNorm> = a.kind.iter().map(|&k| k.into()).collect();
    let rows = sweep_rows(&families, &sizes, &ps, &kinds, a.seed, a.cap)?;
    let text = match a.format {
        Format::Json => to_json(&serde_json::json!({ "schema_version": crate::report::SCHEMA_VERSION, "seed": a.seed, "rows": rows })),
        Format::Csv | Format::Table => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row).map_err(csv_err)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?).expect("csv is utf-8")
        }
    };
    match &a.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => emit(out, &text)?,
    }
    Ok(EXIT_OK)
}

fn cmd_indices(a: IndicesArgs, out: &mut dyn Write) -> CliResult<i32> {
    let g = load_graph(&a.graph)?;
    let report = weak11_upper_bound(&g, a.skip_overlap, a.cap)?;
    let j = IndexJson::new(&g, &report);
    let text = match a.format {
        Format::Json => to_json(&j),
        Format::Csv | Format::Table => {
            let mut s = String::new();
            let _ = writeln!(s, "dilation      {} at vertex {} radius {}", j.dilation.value, j.dilation.vertex, j.dilation.radius);
            match &j.overlapping {
                Some(o) => {
                    let _ = writeln!(s, "overlapping   {}", o.value);
                }
                None => {
                    let _ = writeln!(s, "overlapping   skipped");
                }
            }
            let _ = writeln!(s, "weak11_upper  {}", j.weak11_upper);
            s
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

fn cmd_delta(a: DeltaArgs, out: &mut dyn Write) -> CliResult<i32> {
    if let Some(path) = &a.reconstruct {
        let m = DeltaResponseMatrix::from_json(&read_file(path)?)?;
        emit(out, &reconstruct_from_deltas(&m)?.to_text())?;
        return Ok(EXIT_OK);
    }
    let g = load_graph(&a.graph)?;
    emit(out, &format!("{}\n", delta_response_matrix(&g).to_json()))?;
    Ok(EXIT_OK)
}

fn cmd_maximal(a: MaximalArgs, out: &mut dyn Write) -> CliResult<i32> {
    let g = load_graph(&a.graph)?;
    let f = ExactFunction::parse_text(&read_file(&a.function)?)?;
    let mf = if a.isoclass { eval_isoclass_maximal(&g, &f)? } else { eval_maximal(&g, &f)? };
    emit(out, &mf.to_text())?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("graphmax").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("3..5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_sizes("3,7").unwrap(), vec![3, 7]);
        assert!(parse_sizes("5..3").is_err());
    }

    #[test]
    fn norm_star() {
        let (code, out) = run_str(&["norm", "--family", "star", "--n", "4", "--p", "1", "--kind", "strong"]);
        assert_eq!(code, 0);
        let j: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(j["value"], "5/2");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["norm", "--family", "star", "--n", "4", "--p", "-1"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["norm", "--family", "path", "--n", "30", "--p", "2", "--kind", "restricted"]).0, EXIT_CAP);
        assert_eq!(run_str(&["verify", "--n-max", "9"]).0, EXIT_CAP);
        assert_eq!(run_str(&["norm", "--edges", "/nonexistent/file", "--p", "1"]).0, EXIT_IO);
        assert_eq!(run_str(&["norm", "--p", "1"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["bogus"]).0, EXIT_INPUT);
    }
}

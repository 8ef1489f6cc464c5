//! Command-line front end.
//!
//! Exit codes: 0 for a positive verdict, 1 for a negative one (infeasible,
//! invalid, gave up, counterexample found), 2 for bad input and 3 when the
//! solver reports a theory violation.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::colouring::{classify, verify_colouring, Colouring, ColouringClass, VerifyReport};
use crate::dimacs::{parse_dimacs, serialize_dimacs};
use crate::generate::random_bounded_degree_graph;
use crate::graph::Graph;
use crate::oracle::{oracle_find, ORACLE_MAX_N};
use crate::scan::{scan_conjecture, Conjecture, ScanConfig, ScanMode};
use crate::solver::{solve, SolveConfig, SolveOutcome, SolveStats};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "eqcol",
    version,
    about = "Equitable d-degenerate graph colouring"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find an equitable colouring of a DIMACS graph.
    Solve(SolveArgs),
    /// Check a colouring JSON against a graph.
    Verify(VerifyArgs),
    /// Decide feasibility exactly by exhaustive search.
    Oracle(OracleArgs),
    /// Check a conjecture over a family of small graphs.
    Scan(ScanArgs),
    /// Write a seeded random bounded-degree graph in DIMACS format.
    Generate(GenerateArgs),
    /// Time the solver on one or more graphs.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    /// DIMACS file, or `-` for standard input.
    pub input: String,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Number of classes; defaults to the smallest integer at least Δ/d + 1.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub oracle_fallback_n: usize,
    /// Write the move trace and stuck-state diagnostics to standard error as JSON lines.
    #[arg(long)]
    pub diagnose: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub graph: String,
    pub colouring: String,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub input: String,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_parser = parse_conjecture)]
    pub conjecture: Conjecture,
    #[arg(long, default_value_t = 5)]
    pub nmax: usize,
    /// `exhaustive` or `sample:COUNT`.
    #[arg(long, default_value = "exhaustive", value_parser = parse_mode)]
    pub mode: ScanMode,
    /// Degeneracy bound for `edc`; repeat for several. Defaults to 0, 1, 2.
    #[arg(long)]
    pub d: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub delta: usize,
    #[arg(long, default_value_t = 0.5)]
    pub density: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(required = true)]
    pub inputs: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[command(flatten)]
    pub output: Output,
}

fn parse_conjecture(s: &str) -> Result<Conjecture, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<ScanMode, String> {
    s.parse().map_err(|e: crate::Error| e.to_string())
}

/// Machine-readable result of `solve`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveDocument {
    pub status: String,
    pub d: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class_sizes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub stats: SolveStats,
}

/// Verdict of `verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub valid: bool,
    pub equitable: bool,
    pub failing_classes: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub classification: ColouringClass,
}

#[derive(Deserialize)]
struct ColouringInput {
    k: usize,
    assignment: Vec<usize>,
}

#[derive(Serialize)]
struct BenchLine<'a> {
    input: &'a str,
    n: usize,
    m: usize,
    d: usize,
    k: usize,
    status: &'a str,
    wall_ms: f64,
    repair_rounds: usize,
    attempts: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            EXIT_INPUT
        }
    }
}

type CliResult = Result<i32, String>;

fn dispatch(command: Command) -> CliResult {
    match command {
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Bench(a) => cmd_bench(a),
    }
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("stdin: {e}"))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn read_graph(path: &str) -> Result<Graph, String> {
    parse_dimacs(&read_input(path)?).map_err(|e| format!("{path}: {e}"))
}

fn emit(output: &Output, text: &str) -> Result<(), String> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| format!("stdout: {e}"))
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serialises");
    s.push('\n');
    s
}

/// Smallest integer at least `Δ/d + 1`; `Δ + 1` for proper colourings.
pub fn default_k(g: &Graph, d: usize) -> usize {
    let delta = g.max_degree();
    if d == 0 {
        delta + 1
    } else {
        delta.div_ceil(d) + 1
    }
}

fn cmd_solve(a: SolveArgs) -> CliResult {
    let g = read_graph(&a.input)?;
    let k = a.k.unwrap_or_else(|| default_k(&g, a.d));
    let mut cfg = SolveConfig::new(a.d, k)
        .with_seed(a.seed)
        .with_oracle_fallback(a.oracle_fallback_n)
        .with_diagnostics(a.diagnose);
    cfg.oracle_fallback_n = cfg.oracle_fallback_n.min(ORACLE_MAX_N);
    let run = solve(&g, &cfg).map_err(|e| e.to_string())?;

    if a.diagnose {
        let mut err = io::stderr().lock();
        for event in &run.trace {
            let _ = writeln!(err, "{}", serde_json::to_string(event).expect("serialises"));
        }
        for report in &run.diagnostics {
            let _ = writeln!(
                err,
                "{}",
                serde_json::to_string(report).expect("serialises")
            );
        }
    }

    let (status, colouring, reason, code) = match &run.outcome {
        SolveOutcome::Solved { colouring } => ("solved", Some(colouring), None, EXIT_OK),
        SolveOutcome::InfeasibleProven => ("infeasible", None, None, EXIT_NEGATIVE),
        SolveOutcome::GaveUp { .. } => ("gave_up", None, None, EXIT_NEGATIVE),
        SolveOutcome::TheoryViolation { report } => (
            "theory_violation",
            Some(&report.colouring),
            Some(report.reason.clone()),
            EXIT_VIOLATION,
        ),
    };
    let doc = SolveDocument {
        status: status.into(),
        d: a.d,
        k,
        assignment: colouring.map(|c| c.assignment().to_vec()),
        class_sizes: colouring.map(Colouring::sizes),
        reason,
        stats: run.stats,
    };
    emit(&a.output, &to_json(&doc))?;
    Ok(code)
}

fn cmd_verify(a: VerifyArgs) -> CliResult {
    let g = read_graph(&a.graph)?;
    let text = read_input(&a.colouring)?;
    let input: ColouringInput =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", a.colouring))?;
    if let Some(k) = a.k {
        if k != input.k {
            return Err(format!("colouring has k = {}, expected {k}", input.k));
        }
    }
    let c = Colouring::new(input.k, input.assignment).map_err(|e| e.to_string())?;
    let VerifyReport {
        valid,
        failing_classes,
    } = verify_colouring(&g, &c, a.d).map_err(|e| e.to_string())?;
    let classification = if valid {
        classify(&c)
    } else {
        ColouringClass::InvalidClass(failing_classes[0])
    };
    let equitable = valid && classification == ColouringClass::Equitable;
    let doc = VerifyDocument {
        valid,
        equitable,
        failing_classes,
        class_sizes: c.sizes(),
        classification,
    };
    emit(&a.output, &to_json(&doc))?;
    Ok(if equitable { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_oracle(a: OracleArgs) -> CliResult {
    let g = read_graph(&a.input)?;
    if g.n() > ORACLE_MAX_N {
        return Err(format!("oracle accepts at most {ORACLE_MAX_N} vertices"));
    }
    let verdict = oracle_find(&g, a.d, a.k);
    emit(&a.output, &to_json(&verdict))?;
    Ok(if verdict.feasible {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn cmd_scan(a: ScanArgs) -> CliResult {
    let mut cfg = ScanConfig::new(a.conjecture, a.nmax, a.mode);
    if !a.d.is_empty() {
        cfg.d_values = a.d;
    }
    cfg.seed = a.seed;
    cfg.jobs = a.jobs;
    let report = scan_conjecture(&cfg).map_err(|e| e.to_string())?;
    emit(&a.output, &to_json(&report))?;
    if !report.clean() {
        eprintln!(
            "COUNTEREXAMPLE: {} instance(s) infeasible inside the conjectured range",
            report.counterexamples.len()
        );
        return Ok(EXIT_NEGATIVE);
    }
    Ok(EXIT_OK)
}

fn cmd_generate(a: GenerateArgs) -> CliResult {
    if !(0.0..=1.0).contains(&a.density) {
        return Err(format!("density {} outside [0, 1]", a.density));
    }
    let g = random_bounded_degree_graph(a.n, a.delta, a.density, a.seed);
    emit(&a.output, &serialize_dimacs(&g))?;
    Ok(EXIT_OK)
}

fn cmd_bench(a: BenchArgs) -> CliResult {
    let mut lines = String::new();
    let mut code = EXIT_OK;
    for input in &a.inputs {
        let g = read_graph(input)?;
        let k = a.k.unwrap_or_else(|| default_k(&g, a.d));
        let cfg = SolveConfig::new(a.d, k).with_seed(a.seed);
        let mut best = f64::INFINITY;
        let mut last = None;
        for _ in 0..a.repeat.max(1) {
            let start = Instant::now();
            let run = solve(&g, &cfg).map_err(|e| e.to_string())?;
            best = best.min(start.elapsed().as_secs_f64() * 1e3);
            last = Some(run);
        }
        let run = last.expect("at least one repetition");
        let status = match run.outcome {
            SolveOutcome::Solved { .. } => "solved",
            SolveOutcome::InfeasibleProven => "infeasible",
            SolveOutcome::GaveUp { .. } => "gave_up",
            SolveOutcome::TheoryViolation { .. } => "theory_violation",
        };
        if status != "solved" {
            code = code.max(if status == "theory_violation" {
                EXIT_VIOLATION
            } else {
                EXIT_NEGATIVE
            });
        }
        let line = BenchLine {
            input,
            n: g.n(),
            m: g.m(),
            d: a.d,
            k,
            status,
            wall_ms: best,
            repair_rounds: run.stats.repair_rounds,
            attempts: run.stats.attempts,
        };
        lines.push_str(&serde_json::to_string(&line).expect("serialises"));
        lines.push('\n');
    }
    emit(&a.output, &lines)?;
    Ok(code)
}

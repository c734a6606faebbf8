//! Command-line front end: circuit files in, JSON results out.
//!
//! Exit codes: 0 found or success, 1 not found or verification failed,
//! 2 usage or input error, 3 internal consistency error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::channel::{channel_of_circuit, rotation_product, Gate, GateKind};
use crate::cost::CostParams;
use crate::error::{Error, Result};
use crate::label::coset_label;
use crate::pauli::{Pauli, MAX_QUBITS};
use crate::stats::SearchStats;
use crate::synthesis::{
    synthesize, verify_gates, EngineChoice, Outcome, SynthesisOptions, TReport, Tableau,
    DEFAULT_BUDGET_FACTOR, DEFAULT_EXHAUSTIVE_THRESHOLD, DEFAULT_ROUNDS, DEFAULT_STORE_CAPACITY,
};
use crate::walk::HASH_ID;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Parses the line-oriented circuit format.
///
/// One gate per line (`H 0`, `CNOT 0 1`, …), `#` starts a comment, and an
/// optional `qubits N` line fixes the register width; otherwise it is one
/// more than the largest qubit index used.
pub fn parse_circuit(text: &str) -> Result<(usize, Vec<Gate>)> {
    let mut declared: Option<(usize, usize)> = None;
    let mut gates = Vec::new();
    let mut max_q: Option<(usize, usize)> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let err = |msg: String| Error::Parse { line, msg };
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let head = toks.next().unwrap_or_default();
        let args: Vec<&str> = toks.collect();
        if head.eq_ignore_ascii_case("qubits") {
            if declared.is_some() || !gates.is_empty() {
                return Err(err("`qubits` must appear once, before any gate".into()));
            }
            let [a] = args[..] else {
                return Err(err("`qubits` takes one argument".into()));
            };
            let n: usize = a
                .parse()
                .map_err(|_| err(format!("bad qubit count {a:?}")))?;
            if n == 0 || n > MAX_QUBITS {
                return Err(err(format!("qubit count must be in 1..={MAX_QUBITS}")));
            }
            declared = Some((n, line));
            continue;
        }
        let kind =
            GateKind::from_mnemonic(head).ok_or_else(|| err(format!("unknown gate {head:?}")))?;
        let qubits = args
            .iter()
            .map(|a| {
                a.parse::<usize>()
                    .map_err(|_| err(format!("bad qubit index {a:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let gate = Gate::new(kind, &qubits).map_err(|e| err(e.to_string()))?;
        for &q in &qubits {
            if let Some((n, _)) = declared {
                if q >= n {
                    return Err(err(format!("qubit {q} out of range for {n} qubits")));
                }
            }
            if max_q.is_none_or(|(m, _)| q > m) {
                max_q = Some((q, line));
            }
        }
        gates.push(gate);
    }
    let n = match (declared, max_q) {
        (Some((n, _)), _) => n,
        (None, Some((q, line))) => {
            if q + 1 > MAX_QUBITS {
                return Err(Error::Parse {
                    line,
                    msg: format!("at most {MAX_QUBITS} qubits are supported"),
                });
            }
            q + 1
        }
        (None, None) => {
            return Err(Error::Parse {
                line: 0,
                msg: "empty circuit without a `qubits` line".into(),
            })
        }
    };
    Ok((n, gates))
}

/// Renders a gate list in the circuit file format.
pub fn format_circuit(n: usize, gates: &[Gate]) -> String {
    let mut s = format!("qubits {n}\n");
    for g in gates {
        s.push_str(&g.to_string());
        s.push('\n');
    }
    s
}

#[derive(Parser, Debug)]
#[command(
    name = "clawsynth",
    version,
    about = "T-count optimal synthesis of Clifford+T circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Find a minimal-T-count decomposition of a circuit.
    Synth(SynthArgs),
    /// Recheck a synth result against a circuit.
    Verify(VerifyArgs),
    /// Print the coset label of a circuit's channel matrix.
    Label(LabelArgs),
    /// Evaluate the runtime model over parameter grids.
    Estimate(EstimateArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum EngineArg {
    Auto,
    Walk,
    Exhaustive,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Auto => EngineChoice::Auto,
            EngineArg::Walk => EngineChoice::Walk,
            EngineArg::Exhaustive => EngineChoice::Exhaustive,
        }
    }
}

#[derive(Args, Debug)]
pub struct SynthArgs {
    /// Circuit file.
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub t_min: usize,
    #[arg(long, default_value_t = 10)]
    pub t_max: usize,
    /// Distinguished-point fraction is 2^-THETA_EXP; default from the cost model.
    #[arg(long, value_parser = clap::value_parser!(u32).range(0..=62))]
    pub theta_exp: Option<u32>,
    /// Total search threads; 1 runs the deterministic inline mode.
    #[arg(long, env = "CLAWSYNTH_THREADS", default_value_t = 1)]
    pub threads: usize,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub collectors: Option<usize>,
    #[arg(long)]
    pub verifiers: Option<usize>,
    /// Distinguished-point store capacity w.
    #[arg(long, default_value_t = DEFAULT_STORE_CAPACITY)]
    pub store_capacity: usize,
    /// Run seed; a random one is drawn and recorded when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Search the chunks of an odd t concurrently.
    #[arg(long)]
    pub chunk_parallel: bool,
    #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
    pub engine: EngineArg,
    /// Largest per-side tuple count searched exhaustively.
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_THRESHOLD)]
    pub exhaustive_threshold: u64,
    /// Walk rounds per t, each with fresh salts.
    #[arg(long, default_value_t = DEFAULT_ROUNDS)]
    pub rounds: u32,
    /// Walk step budget per chunk, in units of the point count.
    #[arg(long, default_value_t = DEFAULT_BUDGET_FACTOR)]
    pub budget_factor: u64,
    /// Skip gate-list emission.
    #[arg(long)]
    pub no_gates: bool,
    /// Write the JSON result here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Circuit file.
    pub input: PathBuf,
    /// JSON result produced by `synth`.
    pub result: PathBuf,
}

#[derive(Args, Debug)]
pub struct LabelArgs {
    /// Circuit file.
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    /// Qubit counts, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "3")]
    pub n: Vec<u32>,
    /// T-counts.
    #[arg(long, value_delimiter = ',', default_value = "7")]
    pub t: Vec<u32>,
    /// Store capacities; `2^k` notation is accepted.
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_value = "2^20")]
    pub w: Vec<f64>,
    /// Worker counts.
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_value = "1")]
    pub m: Vec<f64>,
    /// Distinguished-point fractions.
    #[arg(long, value_delimiter = ',', value_parser = parse_real, default_value = "2^-5")]
    pub theta: Vec<f64>,
    /// Matrix-multiplication exponent.
    #[arg(long, value_parser = parse_real, default_value = "3")]
    pub alpha: f64,
    /// Print JSON rows instead of a table.
    #[arg(long)]
    pub json: bool,
}

/// Parses a positive real, accepting `2^k` with integer or real `k`.
fn parse_real(s: &str) -> std::result::Result<f64, String> {
    let v = match s.split_once('^') {
        Some((b, e)) => {
            let b: f64 = b.trim().parse().map_err(|_| format!("bad base in {s:?}"))?;
            let e: f64 = e
                .trim()
                .parse()
                .map_err(|_| format!("bad exponent in {s:?}"))?;
            b.powf(e)
        }
        None => s.trim().parse().map_err(|_| format!("bad number {s:?}"))?,
    };
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{s:?} is not a positive number"))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PauliEntry {
    /// Symplectic bits, x mask then z mask, 16 bits each.
    pub hex: String,
    /// Letters with qubit 0 leftmost.
    pub pauli: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TableauJson {
    pub x_images: Vec<String>,
    pub z_images: Vec<String>,
}

/// JSON written by `synth`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SynthReport {
    pub schema_version: u32,
    pub status: String,
    pub n: usize,
    pub t: Option<usize>,
    pub optimality_flag: Option<String>,
    pub engine: Option<String>,
    /// `P_1..P_t`; the circuit is the Clifford followed by `R(P_1)..R(P_t)`.
    pub pauli_sequence: Vec<PauliEntry>,
    pub tableau: Option<TableauJson>,
    pub gate_list: Option<Vec<String>>,
    pub seed: u64,
    pub hash_id: String,
    pub stats: SearchStats,
    pub per_t: Vec<TReport>,
    pub wall_time_seconds: f64,
}

fn read_circuit(path: &Path) -> Result<(usize, Vec<Gate>)> {
    parse_circuit(&fs::read_to_string(path)?)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Consistency(_) | Error::Corrupt(_) => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn synth(args: &SynthArgs) -> Result<i32> {
    let (n, gates) = read_circuit(&args.input)?;
    let seed = args.seed.unwrap_or_else(rand::random);
    let opts = SynthesisOptions {
        t_min: args.t_min,
        t_max: args.t_max,
        engine: args.engine.into(),
        exhaustive_threshold: args.exhaustive_threshold,
        theta_exp: args.theta_exp,
        threads: args.threads.max(1),
        workers: args.workers,
        collectors: args.collectors,
        verifiers: args.verifiers,
        store_capacity: args.store_capacity.max(1),
        seed,
        chunk_parallel: args.chunk_parallel,
        rounds: args.rounds.max(1),
        budget_factor: args.budget_factor.max(1),
        emit_gates: !args.no_gates,
    };
    let start = Instant::now();
    let outcome = synthesize(&gates, n, &opts)?;
    let wall = start.elapsed().as_secs_f64();
    let (report, code) = match outcome {
        Outcome::Found(r) => {
            let (x, z) = r.tableau.to_strings();
            let report = SynthReport {
                schema_version: SCHEMA_VERSION,
                status: "found".into(),
                n,
                t: Some(r.t()),
                optimality_flag: Some(format!("{:?}", r.optimality)),
                engine: Some(format!("{:?}", r.engine).to_lowercase()),
                pauli_sequence: r
                    .solution
                    .paulis
                    .iter()
                    .map(|p| PauliEntry {
                        hex: p.symplectic_hex(),
                        pauli: p.to_string(),
                    })
                    .collect(),
                tableau: Some(TableauJson {
                    x_images: x,
                    z_images: z,
                }),
                gate_list: r
                    .gates
                    .as_ref()
                    .map(|g| g.iter().map(Gate::to_string).collect()),
                seed,
                hash_id: HASH_ID.into(),
                stats: r.stats,
                per_t: r.reports.clone(),
                wall_time_seconds: wall,
            };
            (report, EXIT_OK)
        }
        Outcome::NotFound(nf) => {
            let report = SynthReport {
                schema_version: SCHEMA_VERSION,
                status: "not_found".into(),
                n,
                t: None,
                optimality_flag: None,
                engine: None,
                pauli_sequence: Vec::new(),
                tableau: None,
                gate_list: None,
                seed,
                hash_id: HASH_ID.into(),
                stats: nf.stats,
                per_t: nf.reports,
                wall_time_seconds: wall,
            };
            (report, EXIT_NOT_FOUND)
        }
    };
    let mut text = serde_json::to_string_pretty(&report)?;
    text.push('\n');
    emit(args.output.as_deref(), &text)?;
    Ok(code)
}

/// Checks a parsed report against a circuit.
pub fn verify_report(report: &SynthReport, n: usize, gates: &[Gate]) -> Result<bool> {
    if report.schema_version != SCHEMA_VERSION || report.n != n || report.status != "found" {
        return Ok(false);
    }
    let target = channel_of_circuit(gates, n)?;
    let paulis = report
        .pauli_sequence
        .iter()
        .map(|e| e.pauli.parse::<Pauli>())
        .collect::<Result<Vec<_>>>()?;
    if report.t != Some(paulis.len())
        || paulis
            .iter()
            .any(|p| p.num_qubits() != n || p.is_identity())
    {
        return Ok(false);
    }
    for (p, e) in paulis.iter().zip(&report.pauli_sequence) {
        if p.symplectic_hex() != e.hex {
            return Ok(false);
        }
    }
    let Some(tab) = &report.tableau else {
        return Ok(false);
    };
    let d = Tableau::from_strings(&tab.x_images, &tab.z_images)?.to_matrix()?;
    if d.num_qubits() != n || rotation_product(&paulis, n)?.mat_mul(&d)? != target {
        return Ok(false);
    }
    if let Some(list) = &report.gate_list {
        let (_, emitted) = parse_circuit(&format!("qubits {n}\n{}", list.join("\n")))?;
        if !verify_gates(&emitted, &target) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn verify(args: &VerifyArgs) -> Result<i32> {
    let (n, gates) = read_circuit(&args.input)?;
    let text = fs::read_to_string(&args.result)?;
    let ok = match serde_json::from_str::<SynthReport>(&text) {
        Ok(report) => verify_report(&report, n, &gates).unwrap_or(false),
        Err(_) => false,
    };
    println!(
        "{}",
        if ok {
            "verified"
        } else {
            "verification failed"
        }
    );
    Ok(if ok { EXIT_OK } else { EXIT_NOT_FOUND })
}

fn label(args: &LabelArgs) -> Result<i32> {
    let (n, gates) = read_circuit(&args.input)?;
    let m = channel_of_circuit(&gates, n)?;
    println!("{}", coset_label(&m).to_hex());
    Ok(EXIT_OK)
}

fn estimate(args: &EstimateArgs) -> Result<i32> {
    let mut rows = Vec::new();
    for &n in &args.n {
        for &t in &args.t {
            for &w in &args.w {
                for &m in &args.m {
                    for &theta in &args.theta {
                        if theta > 1.0 {
                            return Err(Error::Domain(format!("theta {theta} exceeds 1")));
                        }
                        rows.push(
                            CostParams {
                                n,
                                t,
                                w,
                                m,
                                theta,
                                alpha: args.alpha,
                            }
                            .evaluate(),
                        );
                    }
                }
            }
        }
    }
    let mut out = String::new();
    if args.json {
        out = serde_json::to_string_pretty(&rows)?;
        out.push('\n');
    } else {
        out.push_str(&format!(
            "{:>2} {:>3} {:>12} {:>8} {:>10} {:>12} {:>12} {:>12} {:>12} {:>12} {:>10}\n",
            "n",
            "t",
            "w",
            "m",
            "theta",
            "collision",
            "matmul",
            "tcount",
            "refined",
            "limit",
            "opt_theta"
        ));
        for r in &rows {
            let p = r.params;
            out.push_str(&format!(
                "{:>2} {:>3} {:>12.4e} {:>8} {:>10.3e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e} {:>10.3e}   tcount = 2^{:.3}\n",
                p.n,
                p.t,
                p.w,
                p.m,
                p.theta,
                r.collision_steps,
                r.runtime_matmul,
                r.runtime_tcount,
                r.runtime_refined,
                r.runtime_limit,
                r.optimal_theta,
                r.runtime_tcount.log2(),
            ));
        }
    }
    emit(None, &out)?;
    Ok(EXIT_OK)
}

/// Runs one parsed command and returns its exit code.
pub fn execute(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Synth(a) => synth(a),
        Command::Verify(a) => verify(a),
        Command::Label(a) => label(a),
        Command::Estimate(a) => estimate(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            code
        }
    }
}

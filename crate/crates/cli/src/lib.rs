//! `qshare` command-line front end.
//!
//! [`run`] does all the work and returns the exit code together with the
//! buffered stdout and stderr text, so the binary is a thin wrapper and tests
//! can drive commands in-process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use qshare::access::{ShareScheme, SizeTally, Thresholds, DEFAULT_MAX_N};
use qshare::bounds::{classical_gap_lower, gap_report, GapReport, LinearBound};
use qshare::code::{builtin, parse_code, verify_code, ValidationReport};
use qshare::distance::{min_distance_brute_with, DistanceOutcome, DISTANCE_MAX_N};
use qshare::oracle::{cross_check, Disagreement, SWEEP_MAX_N};
use qshare::tables::{parse_table, scan_with};
use qshare::{CodeParams, Eq5Mode, Error, Exec, Rational, StabilizerCode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAP: i32 = 3;
/// `verify` found a subset where the oracle and the algebra differ.
pub const EXIT_DISAGREE: i32 = 4;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "QSHARE_THREADS";

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "qshare", version, about = "Secret sharing with stabilizer codes: access structures and gap bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate the supremacy inequalities for every row of an n,k,d table.
    Scan(ScanArgs),
    /// Validate a code and compute its distance and access structure.
    Analyze(AnalyzeArgs),
    /// Cross-check the algebraic access structure against the statevector oracle.
    Verify(VerifyArgs),
    /// Evaluate the gap bounds for one parameter triple.
    Bounds(BoundsArgs),
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub table: String,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long, default_value = "corrected", value_parser = parse_mode)]
    pub eq5_mode: Eq5Mode,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// Code file path, or `builtin:NAME`.
    #[arg(long)]
    pub code: String,
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    pub max_n: usize,
    #[arg(long)]
    pub distance_max_weight: Option<usize>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub code: String,
    #[arg(long, default_value_t = SWEEP_MAX_N)]
    pub max_n: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long)]
    pub json: bool,
}

fn parse_mode(s: &str) -> Result<Eq5Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub command: String,
    pub version: String,
    pub payload: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRowOut {
    pub line: usize,
    pub n: u64,
    pub k: u64,
    pub d: u64,
    pub quantum_gap_upper: i128,
    pub classical_gap_lower: Rational,
    pub linear_lower_by_m: Vec<LinearBound>,
    pub eq4: bool,
    pub eq5_witness: Option<u64>,
    pub flagged: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanPayload {
    pub table: String,
    pub q: u64,
    pub eq5_mode: Eq5Mode,
    pub rows: Vec<ScanRowOut>,
    pub flagged: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeInfo {
    pub name: String,
    pub n: usize,
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceStatus {
    Found,
    ExceedsMaxWeight,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceInfo {
    pub status: DistanceStatus,
    pub d: Option<usize>,
    pub witness: Option<String>,
    pub max_weight: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq1Check {
    pub gap: usize,
    pub bound: i128,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eq2Check {
    pub q: u64,
    pub r: usize,
    pub lower: Rational,
    pub gap: usize,
    /// Measured gap lies strictly below the classical lower bound.
    pub below: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalyzePayload {
    pub code: CodeInfo,
    pub validation: ValidationReport,
    pub distance: DistanceInfo,
    pub thresholds: Thresholds,
    pub sizes: Vec<SizeTally>,
    pub eq1: Option<Eq1Check>,
    pub eq2: Eq2Check,
    pub bounds: Option<GapReport>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyPayload {
    pub code: CodeInfo,
    pub max_n: usize,
    pub subsets_checked: u64,
    pub agree: bool,
    pub first_disagreement: Option<Disagreement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsPayload {
    pub params: CodeParams,
    pub q: u64,
    pub quantum_gap_upper: i128,
    pub classical_gap_lower: Rational,
    pub linear_lower_by_m: Vec<LinearBound>,
    pub eq4: bool,
    pub eq5_corrected: Option<u64>,
    pub eq5_literal: Option<u64>,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn fail(code: i32, message: impl Into<String>) -> Self {
        let mut stderr = message.into();
        stderr.push('\n');
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }

    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Builds the global rayon pool from `QSHARE_THREADS` if it is set.
pub fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = match raw.trim().parse() {
        Ok(t) if t >= 1 => t,
        _ => return Err(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")),
    };
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let exec = Exec::default();
    match cli.command {
        Command::Scan(a) => cmd_scan(&a, exec),
        Command::Analyze(a) => cmd_analyze(&a, exec),
        Command::Verify(a) => cmd_verify(&a, exec),
        Command::Bounds(a) => cmd_bounds(&a),
    }
}

fn envelope_json<T: Serialize>(command: &str, payload: T) -> String {
    let env = Envelope {
        command: command.to_string(),
        version: VERSION.to_string(),
        payload,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("payload serializes");
    s.push('\n');
    s
}

fn exit_for(e: &Error) -> i32 {
    match e {
        Error::CapExceeded { .. } => EXIT_CAP,
        _ => EXIT_INPUT,
    }
}

fn load_code(spec: &str) -> Result<StabilizerCode, Outcome> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin(name).map_err(|e| Outcome::fail(EXIT_INPUT, e.to_string()));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Outcome::fail(EXIT_IO, format!("{spec}: {e}")))?;
    parse_code(&text).map_err(|e| Outcome::fail(EXIT_INPUT, format!("{spec}: {e}")))
}

fn code_info(code: &StabilizerCode) -> CodeInfo {
    CodeInfo {
        name: code.name().to_string(),
        n: code.n(),
        k: code.k(),
    }
}

fn opt_m(m: Option<u64>) -> String {
    m.map_or_else(|| "-".to_string(), |m| format!("m={m}"))
}

fn bound_list(bounds: &[LinearBound]) -> String {
    let parts: Vec<String> = bounds.iter().map(|b| b.bound.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

pub fn cmd_scan(args: &ScanArgs, exec: Exec) -> Outcome {
    let text = match std::fs::read_to_string(&args.table) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(EXIT_IO, format!("{}: {e}", args.table)),
    };
    let entries = match parse_table(&text) {
        Ok(e) => e,
        Err(Error::MalformedLine { line, message }) => {
            return Outcome::fail(EXIT_INPUT, format!("{}:{line}: {message}", args.table))
        }
        Err(e) => return Outcome::fail(EXIT_INPUT, format!("{}: {e}", args.table)),
    };
    let result = match scan_with(&entries, args.q, args.eq5_mode, exec) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(exit_for(&e), e.to_string()),
    };
    let rows: Vec<ScanRowOut> = result
        .entries
        .iter()
        .map(|row| {
            let p = row.report.params;
            ScanRowOut {
                line: row.entry.source_line,
                n: p.n,
                k: p.k,
                d: p.d,
                quantum_gap_upper: row.report.quantum_gap_upper,
                classical_gap_lower: row.report.classical_gap_lower.clone(),
                linear_lower_by_m: row.report.linear_lower_by_m.clone(),
                eq4: row.report.eq4,
                eq5_witness: row.report.eq5_witness,
                flagged: row.report.flagged(),
            }
        })
        .collect();
    let payload = ScanPayload {
        table: args.table.clone(),
        q: args.q,
        eq5_mode: args.eq5_mode,
        flagged: rows.iter().filter(|r| r.flagged).count(),
        rows,
    };
    if args.json {
        return Outcome::ok(envelope_json("scan", &payload));
    }
    Outcome::ok(render_scan(&payload))
}

pub fn render_scan(p: &ScanPayload) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "table: {}  q: {}  eq5 mode: {}", p.table, p.q, p.eq5_mode);
    let _ = writeln!(
        out,
        "{:>5}  {:<14} {:>7} {:>10}  {:<5}  {:<5}  {:<7}  linear lower bounds",
        "line", "[[n,k,d]]", "n+2-2d", "(n-d+2)/q", "eq4", "eq5", "flagged"
    );
    for r in &p.rows {
        let _ = writeln!(
            out,
            "{:>5}  {:<14} {:>7} {:>10}  {:<5}  {:<5}  {:<7}  {}",
            r.line,
            format!("[[{},{},{}]]", r.n, r.k, r.d),
            r.quantum_gap_upper,
            r.classical_gap_lower.to_string(),
            r.eq4,
            opt_m(r.eq5_witness),
            if r.flagged { "yes" } else { "no" },
            bound_list(&r.linear_lower_by_m),
        );
    }
    let _ = writeln!(out, "flagged: {} of {}", p.flagged, p.rows.len());
    out
}

pub fn cmd_analyze(args: &AnalyzeArgs, exec: Exec) -> Outcome {
    let code = match load_code(&args.code) {
        Ok(c) => c,
        Err(o) => return o,
    };
    match analyze(&code, args.max_n, args.distance_max_weight, exec) {
        Ok(payload) if args.json => Outcome::ok(envelope_json("analyze", &payload)),
        Ok(payload) => Outcome::ok(render_analyze(&payload)),
        Err(e) => Outcome::fail(exit_for(&e), format!("{}: {e}", args.code)),
    }
}

pub fn analyze(
    code: &StabilizerCode,
    max_n: usize,
    distance_max_weight: Option<usize>,
    exec: Exec,
) -> Result<AnalyzePayload, Error> {
    let n = code.n();
    let validation = verify_code(code);
    let scheme = ShareScheme::new(code)?;
    let thresholds = scheme.thresholds(max_n, exec)?;
    let sizes = scheme.summary(max_n, exec)?;

    let distance = if n <= DISTANCE_MAX_N {
        let w = distance_max_weight.unwrap_or(n).min(n);
        match min_distance_brute_with(code, w, exec)? {
            DistanceOutcome::Found(r) => DistanceInfo {
                status: DistanceStatus::Found,
                d: Some(r.d),
                witness: Some(r.witness.to_string()),
                max_weight: Some(w),
            },
            DistanceOutcome::ExceedsMaxWeight(_) => DistanceInfo {
                status: DistanceStatus::ExceedsMaxWeight,
                d: None,
                witness: None,
                max_weight: Some(w),
            },
        }
    } else {
        DistanceInfo {
            status: DistanceStatus::Skipped,
            d: None,
            witness: None,
            max_weight: None,
        }
    };

    let q = 2;
    let lower = classical_gap_lower(q, thresholds.r as u64)?;
    let eq2 = Eq2Check {
        q,
        r: thresholds.r,
        below: Rational::from(thresholds.gap as i64) < lower,
        lower,
        gap: thresholds.gap,
    };

    let mut warnings = Vec::new();
    let (eq1, bounds) = match distance.d {
        Some(d) => {
            let params = CodeParams::new(n as u64, code.k() as u64, d as u64)?;
            let report = gap_report(&params, q, Eq5Mode::Corrected)?;
            if !params.satisfies_singleton() {
                warnings.push(format!("{params} violates the quantum Singleton bound k <= n - 2d + 2"));
            }
            let bound = report.quantum_gap_upper;
            let eq1 = Eq1Check {
                gap: thresholds.gap,
                bound,
                holds: (thresholds.gap as i128) <= bound,
            };
            (Some(eq1), Some(report))
        }
        None => {
            warnings.push("distance unknown: bound checks skipped".to_string());
            (None, None)
        }
    };

    Ok(AnalyzePayload {
        code: code_info(code),
        validation,
        distance,
        thresholds,
        sizes,
        eq1,
        eq2,
        bounds,
        warnings,
    })
}

pub fn render_analyze(p: &AnalyzePayload) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "code: {} (n = {}, k = {})", p.code.name, p.code.n, p.code.k);
    let _ = writeln!(out, "validation:");
    for c in &p.validation.checks {
        let mark = if c.passed { "ok" } else { "FAIL" };
        if c.passed || c.detail.is_empty() {
            let _ = writeln!(out, "  [{mark}] {}", c.name);
        } else {
            let _ = writeln!(out, "  [{mark}] {}: {}", c.name, c.detail);
        }
    }
    match (&p.distance.status, p.distance.d, &p.distance.witness, p.distance.max_weight) {
        (DistanceStatus::Found, Some(d), Some(w), _) => {
            let _ = writeln!(out, "distance: d = {d} (witness {w})");
        }
        (DistanceStatus::ExceedsMaxWeight, _, _, Some(w)) => {
            let _ = writeln!(out, "distance: d > {w} (no logical operator of weight <= {w})");
        }
        _ => {
            let _ = writeln!(out, "distance: skipped (n > {DISTANCE_MAX_N})");
        }
    }
    let t = &p.thresholds;
    let _ = writeln!(out, "thresholds: r = {}, t = {}, gap = {}", t.r, t.t, t.gap);
    let _ = writeln!(out, "access by size:");
    let _ = writeln!(out, "  {:>4} {:>10} {:>10} {:>10}", "size", "qualified", "partial", "forbidden");
    for s in &p.sizes {
        let _ = writeln!(
            out,
            "  {:>4} {:>10} {:>10} {:>10}",
            s.size, s.qualified, s.partial, s.forbidden
        );
    }
    match &p.eq1 {
        Some(e) => {
            let verdict = if e.holds { "holds" } else { "VIOLATED" };
            let _ = writeln!(out, "eq1: gap {} <= n+2-2d = {}: {verdict}", e.gap, e.bound);
        }
        None => {
            let _ = writeln!(out, "eq1: skipped");
        }
    }
    let e2 = &p.eq2;
    let _ = writeln!(
        out,
        "eq2: (r+1)/q = {} at r = {}, q = {}; gap {} {} bound",
        e2.lower,
        e2.r,
        e2.q,
        e2.gap,
        if e2.below { "below" } else { "not below" }
    );
    match &p.bounds {
        Some(b) => {
            let _ = writeln!(out, "eq4: {}", b.eq4);
            let _ = writeln!(out, "eq5 ({}): {}", b.eq5_mode, opt_m(b.eq5_witness));
            let _ = writeln!(out, "linear lower bounds: {}", bound_list(&b.linear_lower_by_m));
        }
        None => {
            let _ = writeln!(out, "eq4: skipped");
            let _ = writeln!(out, "eq5: skipped");
        }
    }
    for w in &p.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}

pub fn cmd_verify(args: &VerifyArgs, exec: Exec) -> Outcome {
    let code = match load_code(&args.code) {
        Ok(c) => c,
        Err(o) => return o,
    };
    let cap = args.max_n.min(SWEEP_MAX_N);
    let check = match cross_check(&code, cap, exec) {
        Ok(c) => c,
        Err(e) => return Outcome::fail(exit_for(&e), format!("{}: {e}", args.code)),
    };
    let payload = VerifyPayload {
        code: code_info(&code),
        max_n: cap,
        subsets_checked: check.subsets_checked,
        agree: check.first_disagreement.is_none(),
        first_disagreement: check.first_disagreement,
    };
    let mut out = if args.json {
        Outcome::ok(envelope_json("verify", &payload))
    } else {
        Outcome::ok(render_verify(&payload))
    };
    if !payload.agree {
        out.code = EXIT_DISAGREE;
    }
    out
}

pub fn render_verify(p: &VerifyPayload) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "code: {} (n = {}, k = {})", p.code.name, p.code.n, p.code.k);
    let _ = writeln!(out, "subsets checked: {}", p.subsets_checked);
    match &p.first_disagreement {
        None => {
            let _ = writeln!(out, "result: oracle and algebraic ranks agree on every subset");
        }
        Some(d) => {
            let shares: Vec<String> = d.shares.iter().map(usize::to_string).collect();
            let oracle = match (&d.oracle_rank, &d.oracle_error) {
                (Some(r), _) => r.to_string(),
                (None, Some(e)) => format!("error ({e})"),
                (None, None) => "unknown".to_string(),
            };
            let _ = writeln!(
                out,
                "result: disagreement on shares {{{}}}: algebraic rank {}, oracle rank {}",
                shares.join(","),
                d.algebraic_rank,
                oracle
            );
        }
    }
    out
}

pub fn cmd_bounds(args: &BoundsArgs) -> Outcome {
    match bounds(args.n, args.k, args.d, args.q) {
        Ok(p) if args.json => Outcome::ok(envelope_json("bounds", &p)),
        Ok(p) => Outcome::ok(render_bounds(&p)),
        Err(e) => Outcome::fail(EXIT_INPUT, e.to_string()),
    }
}

pub fn bounds(n: u64, k: u64, d: u64, q: u64) -> Result<BoundsPayload, Error> {
    let params = CodeParams::new(n, k, d)?;
    let corrected = gap_report(&params, q, Eq5Mode::Corrected)?;
    let literal = gap_report(&params, q, Eq5Mode::Literal)?;
    Ok(BoundsPayload {
        params,
        q,
        quantum_gap_upper: corrected.quantum_gap_upper,
        classical_gap_lower: corrected.classical_gap_lower,
        linear_lower_by_m: corrected.linear_lower_by_m,
        eq4: corrected.eq4,
        eq5_corrected: corrected.eq5_witness,
        eq5_literal: literal.eq5_witness,
    })
}

pub fn render_bounds(p: &BoundsPayload) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "params: {}  q: {}", p.params, p.q);
    let _ = writeln!(out, "quantum gap upper (n+2-2d): {}", p.quantum_gap_upper);
    let _ = writeln!(
        out,
        "classical gap lower ((r+1)/q at r = n-d+1): {}",
        p.classical_gap_lower
    );
    let _ = writeln!(out, "linear gap lower bounds:");
    for b in &p.linear_lower_by_m {
        let _ = writeln!(out, "  m={}: {}", b.m, b.bound);
    }
    let _ = writeln!(out, "eq4: {}", p.eq4);
    let _ = writeln!(out, "eq5 (corrected): {}", opt_m(p.eq5_corrected));
    let _ = writeln!(out, "eq5 (literal): {}", opt_m(p.eq5_literal));
    out
}

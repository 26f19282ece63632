//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verified identity failed, 2 invalid input,
//! 3 a series evaluation did not certify its tail (the result is still
//! printed). Data goes to stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::combinatorics::{ballot_count, BallotCount};
use crate::error::{Error, Result};
use crate::paths::{enumerate_first_passage_capped, DEFAULT_ENUMERATION_CAP};
use crate::probability::{
    absorption_exact, absorption_series, absorption_via_gf, series_trace, Probability,
    SeriesOptions,
};
use crate::simulator::{estimate_absorption, WalkConfig, DEFAULT_MAX_STEPS};
use crate::verify::{run_suite, Bounds, Suite};

/// Environment variable consulted for `--seed` when the flag is absent.
pub const SEED_ENV: &str = "RUIN_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Series,
    Gf,
    Simulate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Recurrences,
    Bijections,
    Oracle,
    Probability,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Recurrences => Suite::Recurrences,
            SuiteArg::Bijections => Suite::Bijections,
            SuiteArg::Oracle => Suite::Oracle,
            SuiteArg::Probability => Suite::Probability,
        }
    }
}

/// Inclusive integer range: `a`, `a..b` or `a..=b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InclusiveRange {
    pub start: u32,
    pub end: u32,
}

impl FromStr for InclusiveRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad range {s:?}"));
        let (start, end) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        Ok(InclusiveRange { start, end })
    }
}

#[derive(Debug, Parser)]
#[command(name = "ruin", version, about = "Lattice-path counts and absorption probabilities for the gambler's ruin walk")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact ballot counts C_k(n) over a grid.
    Count {
        #[arg(long, default_value = "1")]
        k: InclusiveRange,
        #[arg(long, default_value = "0..10")]
        n: InclusiveRange,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Absorption probability P(x = k).
    Prob(ProbArgs),
    /// Alias of `prob --method simulate`.
    Simulate(ProbArgs),
    /// Per-term trace of the absorption series.
    Converge {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 50)]
        max_terms: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Run identity suites; exits 1 if any fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        /// Largest k for the recurrence tables.
        #[arg(long, default_value_t = 50)]
        k: u32,
        /// Largest n for the recurrence tables.
        #[arg(long, default_value_t = 200)]
        n: u32,
        /// Largest path length 2n + k for enumeration-based checks.
        #[arg(long, default_value_t = 22)]
        len: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// List first-passage paths in canonical `start:steps` form.
    Dump {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
        cap: u64,
    },
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    #[arg(long)]
    pub k: u32,
    /// Decimal literal, or `num/den` for exact arithmetic.
    #[arg(long)]
    pub p: String,
    #[arg(long, value_enum, default_value = "exact")]
    pub method: Method,
    #[arg(long, default_value_t = 1e-12)]
    pub tail: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_terms: usize,
    /// Half-width of the band around p = 1/2 where no tail is certified.
    #[arg(long, default_value_t = 0.005)]
    pub band: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: u64,
    #[arg(long, env = SEED_ENV, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t)]
    pub format: OutputFormat,
}

/// Everything a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { code: EXIT_OK, stdout, stderr: String::new() }
    }

    fn invalid(err: impl std::fmt::Display) -> Self {
        Output { code: EXIT_INVALID, stdout: String::new(), stderr: format!("error: {err}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli.command),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Output { code: EXIT_INVALID, stdout: String::new(), stderr: rendered }
            } else {
                Output::ok(rendered)
            }
        }
    }
}

pub fn execute(command: Command) -> Output {
    let result = match command {
        Command::Count { k, n, format } => cmd_count(k, n, format).map(Output::ok),
        Command::Prob(args) => cmd_prob(&args, args.method),
        Command::Simulate(args) => cmd_prob(&args, Method::Simulate),
        Command::Converge { k, p, max_terms, format } => {
            cmd_converge(k, &p, max_terms, format).map(Output::ok)
        }
        Command::Verify { suite, k, n, len, cap, format } => {
            let bounds = Bounds { k_max: k, n_max: n, max_len: len, cap };
            cmd_verify(suite.into(), &bounds, format)
        }
        Command::Dump { k, n, cap } => cmd_dump(k, n, cap).map(Output::ok),
    };
    result.unwrap_or_else(Output::invalid)
}

// One output field: its text form (table, CSV) and its JSON form.
struct Cell {
    text: String,
    json: Value,
}

type Record = Vec<(&'static str, Cell)>;

fn int(v: u64) -> Cell {
    Cell { text: v.to_string(), json: Value::from(v) }
}

fn count(v: &BallotCount) -> Cell {
    // JSON strings keep every digit
    Cell { text: v.to_string(), json: Value::String(v.to_string()) }
}

fn real(v: f64) -> Cell {
    let json = serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null);
    Cell { text: v.to_string(), json }
}

fn maybe_real(v: Option<f64>) -> Cell {
    match v {
        Some(x) if x.is_finite() => real(x),
        _ => Cell { text: "n/a".into(), json: Value::Null },
    }
}

fn prob(v: &Probability) -> Cell {
    match v {
        Probability::Exact(r) => Cell { text: r.to_string(), json: Value::String(r.to_string()) },
        Probability::Float(x) => real(*x),
    }
}

fn text(v: impl Into<String>) -> Cell {
    let s = v.into();
    Cell { json: Value::String(s.clone()), text: s }
}

fn flag(v: bool) -> Cell {
    Cell { text: v.to_string(), json: Value::Bool(v) }
}

fn to_json(record: Record) -> Value {
    Value::Object(record.into_iter().map(|(k, c)| (k.to_string(), c.json)).collect::<Map<_, _>>())
}

fn render_rows(records: Vec<Record>, format: OutputFormat) -> Result<String> {
    let headers: Vec<&str> = records.first().map(|r| r.iter().map(|(h, _)| *h).collect()).unwrap_or_default();
    match format {
        OutputFormat::Json => {
            let arr = Value::Array(records.into_iter().map(to_json).collect());
            Ok(serde_json::to_string_pretty(&arr).expect("json values serialize") + "\n")
        }
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            let io = |e: csv::Error| Error::Config(e.to_string());
            w.write_record(&headers).map_err(io)?;
            for r in &records {
                w.write_record(r.iter().map(|(_, c)| c.text.as_str())).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Config(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
        }
        OutputFormat::Table => {
            let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
            for r in &records {
                for (i, (_, c)) in r.iter().enumerate() {
                    widths[i] = widths[i].max(c.text.len());
                }
            }
            let mut out = String::new();
            let line = |cells: Vec<&str>, out: &mut String| {
                let padded: Vec<String> =
                    cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
                let _ = writeln!(out, "{}", padded.join("  ").trim_end());
            };
            line(headers.clone(), &mut out);
            for r in &records {
                line(r.iter().map(|(_, c)| c.text.as_str()).collect(), &mut out);
            }
            Ok(out)
        }
    }
}

// Single results: the first field is the headline value.
fn render_single(record: Record, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => {
            Ok(serde_json::to_string_pretty(&to_json(record)).expect("json values serialize") + "\n")
        }
        OutputFormat::Csv => render_rows(vec![record], format),
        OutputFormat::Table => {
            let mut out = String::new();
            let mut fields = record.into_iter();
            if let Some((_, head)) = fields.next() {
                let _ = writeln!(out, "{}", head.text);
            }
            for (k, c) in fields {
                let _ = writeln!(out, "{k}: {}", c.text);
            }
            Ok(out)
        }
    }
}

fn check_range(name: &str, r: InclusiveRange) -> Result<()> {
    if r.start > r.end {
        return Err(Error::Config(format!("empty {name} range {}..{}", r.start, r.end)));
    }
    Ok(())
}

/// `C_k(n)` over `k_range x n_range`, full precision.
pub fn cmd_count(k_range: InclusiveRange, n_range: InclusiveRange, format: OutputFormat) -> Result<String> {
    check_range("k", k_range)?;
    check_range("n", n_range)?;
    if k_range.start == 0 {
        return Err(Error::ZeroStart);
    }
    let mut records = Vec::new();
    for k in k_range.start..=k_range.end {
        for n in n_range.start..=n_range.end {
            let c = ballot_count(k, n)?;
            records.push(vec![("k", int(k as u64)), ("n", int(n as u64)), ("count", count(&c))]);
        }
    }
    render_rows(records, format)
}

pub fn cmd_prob(args: &ProbArgs, method: Method) -> Result<Output> {
    let p: Probability = args.p.parse()?;
    if args.k == 0 {
        return Err(Error::ZeroStart);
    }
    let head = |value: Cell, method: &str| -> Record {
        vec![
            ("probability", value),
            ("k", int(args.k as u64)),
            ("p", prob(&p)),
            ("method", text(method)),
        ]
    };
    let (record, code) = match method {
        Method::Exact => (head(prob(&absorption_exact(args.k, &p)?), "exact"), EXIT_OK),
        Method::Gf => {
            if args.k != 1 {
                return Err(Error::Config("the generating-function route computes k = 1 only".into()));
            }
            (head(real(absorption_via_gf(&p)?), "gf"), EXIT_OK)
        }
        Method::Series => {
            let opts = SeriesOptions { critical_band: args.band, max_terms: args.max_terms, cancel: None };
            let ev = absorption_series(args.k, &p, args.tail, &opts)?;
            let mut r = head(prob(&ev.partial_sum), "series");
            r.push(("approx", real(ev.partial_sum.to_f64())));
            r.push(("terms_used", int(ev.terms_used as u64)));
            r.push(("tail_bound", maybe_real(Some(ev.tail_bound))));
            r.push(("converged", flag(ev.converged)));
            (r, if ev.converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
        }
        Method::Simulate => {
            let cfg = WalkConfig::new(args.k, p.clone(), args.trials, args.seed).with_max_steps(args.max_steps);
            let est = estimate_absorption(&cfg)?;
            let mut r = head(real(est.point), "simulate");
            r.extend([
                ("trials", int(est.trials)),
                ("absorbed", int(est.absorbed)),
                ("censored", int(est.censored)),
                ("ci_low", real(est.ci_low)),
                ("ci_high", real(est.ci_high)),
                ("is_lower_bound", flag(est.is_lower_bound)),
                ("max_steps", int(args.max_steps)),
                ("seed", int(args.seed)),
            ]);
            (r, EXIT_OK)
        }
    };
    let stdout = render_single(record, args.format)?;
    let stderr = if code == EXIT_NOT_CONVERGED {
        "warning: tail not certified; probability is a lower bound\n".to_string()
    } else {
        String::new()
    };
    Ok(Output { code, stdout, stderr })
}

pub fn cmd_converge(k: u32, p: &str, max_terms: u64, format: OutputFormat) -> Result<String> {
    let p: Probability = p.parse()?;
    let rows = series_trace(k, &p, max_terms)?;
    let records = rows
        .into_iter()
        .map(|r| {
            vec![
                ("n", int(r.n)),
                ("term", real(r.term)),
                ("partial_sum", real(r.partial_sum)),
                ("tail_bound", maybe_real(r.tail_bound)),
            ]
        })
        .collect();
    render_rows(records, format)
}

pub fn cmd_verify(suite: Suite, bounds: &Bounds, format: OutputFormat) -> Result<Output> {
    let checks = run_suite(suite, bounds)?;
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let stdout = match format {
        OutputFormat::Table => {
            let mut out = String::new();
            for c in &checks {
                let _ = writeln!(out, "{c}");
            }
            let _ = writeln!(out, "{} checks, {} failed", checks.len(), failed);
            out
        }
        _ => {
            let records = checks
                .iter()
                .map(|c| {
                    vec![
                        ("identity", text(c.name)),
                        ("range", text(c.range.clone())),
                        ("cases", int(c.cases)),
                        ("passed", flag(c.passed())),
                        ("counterexample", text(c.counterexample.clone().unwrap_or_default())),
                    ]
                })
                .collect();
            render_rows(records, format)?
        }
    };
    let code = if failed == 0 { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok(Output { code, stdout, stderr: String::new() })
}

pub fn cmd_dump(k: u32, n: u32, cap: u64) -> Result<String> {
    let mut out = String::new();
    for path in enumerate_first_passage_capped(k, n, cap)? {
        let _ = writeln!(out, "{path}");
    }
    Ok(out)
}

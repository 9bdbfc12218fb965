//! Batch driver for `rimtrace-core`: every workflow is a subcommand reading
//! a JSON config and/or flags and writing JSON and CSV artifacts.
//!
//! Exit status: 0 on success, 2 on any validation, spec, IO or numerical
//! error, 3 when `--strict` is set and a verdict is inconclusive. A one-line
//! JSON summary always goes to stdout.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

pub mod commands;
pub mod config;
pub mod spec;

use config::Params;

/// Default directory for artifacts when `--out`/`--csv` are absent.
pub const OUT_DIR_ENV: &str = "RIMTRACE_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("spec: {0}")]
    Spec(String),
    #[error("io: {0}")]
    Io(String),
    #[error("{0}")]
    Core(#[from] rimtrace_core::Error),
}

#[derive(Debug, Parser)]
#[command(name = "rimtrace", version, about = "Boundary regularity checks for holomorphic functions on the disk")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    /// JSON file with parameters (same names as the flags, kebab-case)
    #[arg(long)]
    config: Option<PathBuf>,
    /// Exit with status 3 on inconclusive verdicts
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    params: Params,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Harmonic extension (or its angular derivative) at one point.
    /// CSV columns: re, im, order
    Extend(RunArgs),
    /// Radial sweep of angular derivatives toward the rim.
    /// CSV columns: order, radius, sup_error, sup_norm
    Sweep(RunArgs),
    /// Growth-exponent A^p classification.
    /// CSV columns: order, radius, sup_norm, resolved
    Classify(RunArgs),
    /// Decay of the arc-localized extension away from its arc.
    /// CSV columns: radius, sup, bound
    ArcDecay(RunArgs),
    /// Convergence of arc extension derivatives to the completed trace inside the arc.
    /// CSV columns: order, radius, sup_error, b_sup
    ArcConverge(RunArgs),
    /// Disk, trace or domain semi-norms and their equivalence residuals.
    /// CSV columns: order, f_seminorm, g_seminorm (domain specs: order, domain_seminorm)
    Seminorms(RunArgs),
    /// Exact chain-rule polynomials P and Q.
    /// CSV columns: family, k, l, power, re, im
    ChainPolys(RunArgs),
    /// Check a disk map, build its boundary chart and verify the chain rule.
    /// CSV columns: t, re_gamma, im_gamma, re_dgamma, im_dgamma
    ConformalVerify(RunArgs),
    /// List or dump corpus entries.
    /// CSV columns: name, kind, class, note
    Corpus(RunArgs),
}

impl Command {
    fn split(self) -> (&'static str, RunArgs) {
        match self {
            Command::Extend(a) => ("extend", a),
            Command::Sweep(a) => ("sweep", a),
            Command::Classify(a) => ("classify", a),
            Command::ArcDecay(a) => ("arc-decay", a),
            Command::ArcConverge(a) => ("arc-converge", a),
            Command::Seminorms(a) => ("seminorms", a),
            Command::ChainPolys(a) => ("chain-polys", a),
            Command::ConformalVerify(a) => ("conformal-verify", a),
            Command::Corpus(a) => ("corpus", a),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Inconclusive,
}

/// Table written as CSV.
#[derive(Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// What a subcommand hands back to the runner.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    /// Merged into the stdout summary.
    pub summary: Map<String, Value>,
    pub result: Value,
    pub table: Table,
}

/// Runs the CLI on `argv` (program name first) and returns the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = write!(stderr, "{text}");
            }
            return code;
        }
    };
    let (name, args) = cli.command.split();
    let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    match execute(name, args, out_dir.as_deref()) {
        Ok((summary, code)) => {
            let _ = writeln!(stdout, "{summary}");
            code
        }
        Err((e, extra)) => {
            let _ = writeln!(stderr, "error: {e}");
            let mut s = Map::new();
            s.insert("subcommand".into(), name.into());
            s.insert("status".into(), "error".into());
            s.insert("error".into(), e.to_string().into());
            s.extend(extra);
            let _ = writeln!(stdout, "{}", Value::Object(s));
            2
        }
    }
}

type Failure = (CliError, Map<String, Value>);

fn execute(name: &'static str, args: RunArgs, out_dir: Option<&Path>) -> Result<(Value, i32), Failure> {
    let plain = |e: CliError| (e, Map::new());
    let base = match &args.config {
        Some(p) => config::load(p).map_err(plain)?,
        None => Params::default(),
    };
    let mut params = base.merge(args.params);
    let outcome = commands::dispatch(name, &mut params)?;
    let config = json!({ "subcommand": name, "strict": args.strict, "params": params });

    let json_path = params.out.clone().or_else(|| out_dir.map(|d| d.join(format!("{name}.json"))));
    let csv_path = params.csv.clone().or_else(|| out_dir.map(|d| d.join(format!("{name}.csv"))));
    let mut artifacts = Vec::new();
    if let Some(p) = json_path {
        let doc = json!({ "config": config, "result": outcome.result });
        write_file(&p, |w| {
            serde_json::to_writer_pretty(&mut *w, &doc).map_err(std::io::Error::other)?;
            writeln!(w)
        })
        .map_err(plain)?;
        artifacts.push(p.display().to_string());
    }
    if let Some(p) = csv_path {
        write_csv(&p, &outcome.table).map_err(plain)?;
        artifacts.push(p.display().to_string());
    }

    let code = if args.strict && outcome.status == Status::Inconclusive { 3 } else { 0 };
    let mut s = Map::new();
    s.insert("subcommand".into(), name.into());
    s.insert("status".into(), if outcome.status == Status::Ok { "ok" } else { "inconclusive" }.into());
    s.extend(outcome.summary);
    s.insert("artifacts".into(), artifacts.into());
    Ok((Value::Object(s), code))
}

fn write_file(path: &Path, body: impl FnOnce(&mut std::io::BufWriter<std::fs::File>) -> std::io::Result<()>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io(format!("writing {}: {e}", path.display()));
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let mut w = std::io::BufWriter::new(std::fs::File::create(path).map_err(io)?);
    body(&mut w).map_err(io)?;
    w.flush().map_err(io)
}

fn write_csv(path: &Path, table: &Table) -> Result<(), CliError> {
    write_file(path, |w| {
        let mut c = csv::Writer::from_writer(w);
        c.write_record(&table.header)?;
        for row in &table.rows {
            c.write_record(row)?;
        }
        c.flush()
    })
}

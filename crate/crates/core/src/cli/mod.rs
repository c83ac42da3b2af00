//! Batch front end: `cantor-approx <subcommand> [flags]`.
//!
//! Options come from flags and an optional `--config` file of `key = value`
//! lines (flags win). Everything is validated before any computation. JSON
//! reports have sorted keys and a `*_decimal` sibling for each exact rational;
//! CSV reports hold exact `num/den` cells, with lossy float columns only under
//! `--plot`. Exit codes: 0 on success, 2 on validation errors, 3 on resource
//! or precision errors.

mod commands;
pub mod config;
pub mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::calibration;
use crate::error::{Error, Result};
pub use config::{OutputFormat, RunConfig};

/// The versioned JSON schema every report validates against.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Cantor measure of the window.
    Measure,
    /// Layer A*_n (level --n) with its measure and comparator.
    Layer,
    /// Measures of A*_m, A*_n and their intersection (--m, --n).
    Pairwise,
    /// Quasi-independence ratios for all pairs m < n <= --nmax.
    QuasiScan,
    /// Convergence/divergence series test up to --nmax.
    Series,
    /// Natural-cover tail sums from --n0 to --nmax.
    Tail,
    /// Second-moment ratio over layers 1..=Q.
    BcRatio,
    /// Covering-exponent estimates for --psi pow:TAU.
    DimEstimate,
    /// Build the sparse-digit number from --tau, --lambda, --coef, --rule, -S.
    XiBuild,
    /// Truncation, convergent and exponent checks on the sparse-digit number.
    XiVerify,
    /// Certified continued fraction of --x to --depth quotients.
    Cf,
    /// Finite-window irrationality-exponent estimate of --x.
    Exponent,
    /// Interval of a CF prefix (--quotients) and exclusion check for --x.
    CfInterval,
    /// Full-cover identity at levels 1..=--nmax (or --n).
    FullCover,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Measure => "measure",
            Command::Layer => "layer",
            Command::Pairwise => "pairwise",
            Command::QuasiScan => "quasi-scan",
            Command::Series => "series",
            Command::Tail => "tail",
            Command::BcRatio => "bc-ratio",
            Command::DimEstimate => "dim-estimate",
            Command::XiBuild => "xi-build",
            Command::XiVerify => "xi-verify",
            Command::Cf => "cf",
            Command::Exponent => "exponent",
            Command::CfInterval => "cf-interval",
            Command::FullCover => "full-cover",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cantor-approx", version, about = "Exact Diophantine approximation on missing-digit Cantor sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Args)]
struct Flags {
    /// Missing-digit set BASE:D1,D2,... [default 3:0,2]
    #[arg(long, global = true)]
    set: Option<String>,
    /// pow:E, powlog:A:B or table:n=v,... [default pow:2]
    #[arg(long, global = true)]
    psi: Option<String>,
    /// Truncate psi to min(C/r, psi(r)).
    #[arg(long, global = true, value_name = "C")]
    truncate: Option<String>,
    /// pow:S or table:n=v,... [default pow:gamma]
    #[arg(long, global = true)]
    f: Option<String>,
    /// Assert that r^-gamma f(r) is monotonic for a tabulated f.
    #[arg(long = "f-monotone", global = true)]
    f_monotone: bool,
    /// Window lo,hi [default 0,1]
    #[arg(long, global = true)]
    window: Option<String>,
    #[arg(long, global = true)]
    nmax: Option<String>,
    #[arg(long, global = true)]
    n: Option<String>,
    #[arg(long, global = true)]
    m: Option<String>,
    #[arg(long, global = true)]
    n0: Option<String>,
    #[arg(short = 'Q', global = true)]
    q: Option<String>,
    #[arg(short = 'S', global = true)]
    s: Option<String>,
    #[arg(long, global = true)]
    depth: Option<String>,
    /// A rational in (0, 1), golden, gamma, or xi.
    #[arg(long, global = true)]
    x: Option<String>,
    /// CF prefix a1,a2,...
    #[arg(long, global = true)]
    quotients: Option<String>,
    /// Growth rate: a rational, sqrt5 or threshold [default 3]
    #[arg(long, global = true)]
    tau: Option<String>,
    #[arg(long, global = true)]
    lambda: Option<String>,
    #[arg(long, global = true)]
    coef: Option<String>,
    /// power or factorial [default power]
    #[arg(long, global = true)]
    rule: Option<String>,
    /// Centre balls on every p/b^n, not only reduced ones.
    #[arg(long = "all-centers", global = true)]
    all_centers: bool,
    /// json or csv [default json]
    #[arg(long, global = true)]
    output: Option<String>,
    /// Output path; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    workers: Option<String>,
    /// Precision doublings allowed for certified comparisons [default 16]
    #[arg(long = "precision-budget", global = true, value_name = "K")]
    precision_budget: Option<String>,
    /// key=value file; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Append lossy float columns to CSV output.
    #[arg(long, global = true)]
    plot: bool,
    /// Record wall-clock time in timing_ms.
    #[arg(long, global = true)]
    timing: bool,
}

impl Flags {
    fn values(&self) -> Result<BTreeMap<String, String>> {
        let mut v = match &self.config {
            Some(p) => config::read_config_file(p)?,
            None => BTreeMap::new(),
        };
        let strings = [
            ("set", &self.set),
            ("psi", &self.psi),
            ("truncate", &self.truncate),
            ("f", &self.f),
            ("window", &self.window),
            ("nmax", &self.nmax),
            ("n", &self.n),
            ("m", &self.m),
            ("n0", &self.n0),
            ("Q", &self.q),
            ("S", &self.s),
            ("depth", &self.depth),
            ("x", &self.x),
            ("quotients", &self.quotients),
            ("tau", &self.tau),
            ("lambda", &self.lambda),
            ("coef", &self.coef),
            ("rule", &self.rule),
            ("output", &self.output),
            ("workers", &self.workers),
            ("precision-budget", &self.precision_budget),
        ];
        for (k, val) in strings {
            if let Some(val) = val {
                v.insert(k.to_string(), val.clone());
            }
        }
        if let Some(p) = &self.out {
            v.insert("out".into(), p.display().to_string());
        }
        for (k, on) in [
            ("f-monotone", self.f_monotone),
            ("all-centers", self.all_centers),
            ("plot", self.plot),
            ("timing", self.timing),
        ] {
            if on {
                v.insert(k.to_string(), "true".into());
            }
        }
        Ok(v)
    }
}

/// Runs one subcommand and returns the rendered report.
pub fn render(command: Command, cfg: &RunConfig) -> Result<String> {
    let start = Instant::now();
    let (results, table) = commands::execute(command, cfg)?;
    match cfg.output {
        OutputFormat::Csv => table.to_csv(cfg.plot),
        OutputFormat::Json => {
            let timing = cfg.timing.then(|| start.elapsed().as_millis() as u64);
            let calib = serde_json::to_value(calibration::committed()).expect("rationals serialize");
            let doc = report::envelope(command.name(), &cfg.echo, results, calib, timing);
            let mut text = serde_json::to_string_pretty(&doc).expect("json values serialize");
            text.push('\n');
            Ok(text)
        }
    }
}

fn run(command: Command, flags: &Flags) -> Result<()> {
    let cfg = RunConfig::resolve(&flags.values()?)?;
    let text = render(command, &cfg)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Resource(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::Resource(format!("cannot write output: {e}")))
        }
    }
}

/// `run_command`: parses `argv` (program name first), runs the subcommand and
/// returns the process exit code.
pub fn run_command<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command, &cli.flags) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

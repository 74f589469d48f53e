//! `curvmo`: sectional curvature moments, densities and self-checks.

mod model;
mod verify;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use curvmo::closed_forms::{DensityModel, HistogramOptions};
use curvmo::invariants::{hitchin_thorpe_report, HtReport};
use curvmo::{DegreeBudget, Error, Result};
use model::{ModelFlags, ModelSpec};
use verify::Suite;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "curvmo", version, about = "Moments and densities of sectional curvature")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact moments Psi_0 ..= Psi_k.
    Moments(MomentsArgs),
    /// Tabulate the sectional curvature density.
    Density(DensityArgs),
    /// Run self-check suites.
    Verify(VerifyArgs),
    /// Euler integrand identity for a 4-dimensional model.
    HtReport(HtArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ModelArgs {
    /// sphere, flat, cpn, hpn, op2, gr2rn, product, random or file
    #[arg(long)]
    model: String,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Scalar curvature of cpn/hpn, as "p/q" (default: sectional curvature in [1, 4])
    #[arg(long)]
    kappa: Option<String>,
    /// Sectional curvature of a sphere, as "p/q"
    #[arg(long)]
    c: Option<String>,
    /// Product factor such as "sphere:2:1", "flat:1", "cpn:2", "hpn:2", "op2", "random:3:7"
    #[arg(long)]
    left: Option<String>,
    #[arg(long)]
    right: Option<String>,
    /// Tensor JSON document for --model file
    #[arg(long)]
    path: Option<PathBuf>,
    /// Seed for random tensors and Monte Carlo tabulation
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl ModelArgs {
    fn spec(&self) -> Result<ModelSpec> {
        ModelFlags {
            model: self.model.clone(),
            m: self.m,
            n: self.n,
            kappa: self.kappa.clone(),
            c: self.c.clone(),
            seed: Some(self.seed),
            left: self.left.clone(),
            right: self.right.clone(),
            path: self.path.clone(),
        }
        .resolve()
    }
}

#[derive(Args)]
struct MomentsArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 101)]
    points: usize,
    /// Evaluate at these abscissae instead of a grid
    #[arg(long)]
    at: Vec<f64>,
    #[arg(long, default_value_t = 512)]
    bins: usize,
    #[arg(long, default_value_t = 1 << 20)]
    samples: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 200_000)]
    samples: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HtArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct MomentsDoc {
    schema_version: u32,
    model: String,
    dimension: usize,
    moments: Vec<String>,
}

#[derive(Serialize)]
struct DensityDoc {
    schema_version: u32,
    model: String,
    support: [f64; 2],
    points: Vec<[f64; 2]>,
    integral: f64,
}

#[derive(Serialize)]
struct VerifyDoc {
    schema_version: u32,
    suite: String,
    passed: bool,
    checks: Vec<verify::CheckResult>,
}

#[derive(Serialize)]
struct HtDoc {
    schema_version: u32,
    model: String,
    #[serde(flatten)]
    report: HtReport,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Error::InvalidParameter(e.to_string()))
        }
    }
}

fn json(value: &impl Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn moments(args: &MomentsArgs) -> Result<()> {
    let spec = args.model.spec()?;
    let seq = spec.moments(args.k, DegreeBudget::from_env())?;
    let text = match args.format {
        Format::Json => json(&MomentsDoc {
            schema_version: SCHEMA_VERSION,
            model: spec.to_string(),
            dimension: seq.dimension(),
            moments: seq.to_strings(),
        })?,
        Format::Csv => {
            let mut s = format!("# model={spec} dimension={}\nk,moment\n", seq.dimension());
            for (k, v) in seq.values().iter().enumerate() {
                s += &format!("{k},{v}\n");
            }
            s
        }
    };
    emit(&args.out, &text)
}

/// Chebyshev-type abscissae: interior points clustered at both endpoints,
/// where the densities are singular or vanish.
fn abscissae(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|i| {
            let t = std::f64::consts::PI * (i as f64 + 0.5) / points as f64;
            lo + (hi - lo) * (1.0 - t.cos()) / 2.0
        })
        .collect()
}

fn density(args: &DensityArgs) -> Result<()> {
    let spec = args.model.spec()?;
    let options = HistogramOptions { bins: args.bins, samples: args.samples, seed: args.model.seed };
    let model = spec.density(&options)?;
    if let DensityModel::Atom(c) = model {
        return Err(Error::InvalidParameter(format!("{spec} is a point mass at {c}")));
    }
    let (lo, hi) = model.support();
    let xs = if args.at.is_empty() { abscissae(lo, hi, args.points.max(1)) } else { args.at.clone() };
    let points = xs.iter().map(|&s| Ok([s, model.eval(s)?])).collect::<Result<Vec<_>>>()?;
    let integral = model.mass()?;
    let text = match args.format {
        Format::Json => json(&DensityDoc {
            schema_version: SCHEMA_VERSION,
            model: spec.to_string(),
            support: [lo, hi],
            points,
            integral,
        })?,
        Format::Csv => {
            let mut s = format!("# model={spec} support=[{lo},{hi}]\ns,density\n");
            for [x, d] in &points {
                s += &format!("{x},{d}\n");
            }
            s + &format!("# integral={integral:.12}\n")
        }
    };
    emit(&args.out, &text)
}

fn run_verify(args: &VerifyArgs) -> Result<bool> {
    let checks = verify::run(args.suite, args.seed, args.samples);
    let passed = checks.iter().all(|c| c.passed);
    let suite = format!("{:?}", args.suite).to_lowercase();
    let text = match args.format {
        Format::Json => json(&VerifyDoc { schema_version: SCHEMA_VERSION, suite, passed, checks })?,
        Format::Csv => {
            let mut s = String::from("suite,check,passed,detail\n");
            for c in &checks {
                s += &format!("{},{},{},\"{}\"\n", c.suite, c.name, c.passed, c.detail.replace('"', "'"));
            }
            s
        }
    };
    emit(&args.out, &text)?;
    Ok(passed)
}

fn ht_report(args: &HtArgs) -> Result<()> {
    let spec = args.model.spec()?;
    let report = hitchin_thorpe_report(&spec.tensor()?)?;
    emit(&args.out, &json(&HtDoc { schema_version: SCHEMA_VERSION, model: spec.to_string(), report })?)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Moments(a) => moments(a).map(|_| true),
        Command::Density(a) => density(a).map(|_| true),
        Command::Verify(a) => run_verify(a),
        Command::HtReport(a) => ht_report(a).map(|_| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

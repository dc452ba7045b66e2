//! `cdl`: runs the verification suites and exports plot data.
//!
//! Exit codes: 0 when every assertion holds, 1 on an assertion or
//! computation failure, 2 on configuration, usage or I/O errors.

mod config;
mod plot;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{ExperimentConfig, Overrides};
use plot::PlotKind;

#[derive(Parser)]
#[command(name = "cdl", version, about = "Functional duality experiments on radial log-concave functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Involutions and factorizations of the transforms on profiles.
    Transforms(Common),
    /// Santaló ratios in the exact regime α ≥ ρ_n (n+2)².
    ExactJl(Common),
    /// λ_n(α) and γ below the threshold.
    TightJl(Common),
    /// Functional Mahler products against the even bound.
    Mahler(Common),
    /// ρ_n and the threshold for each dimension.
    RhoTable(Common),
    /// Covering-number bounds, LP estimates and convolution ratios.
    Covering(Common),
    /// Primal against 𝒜_α-dual covering numbers.
    Duality(Common),
    /// Grid transforms against exact radial transforms.
    Crosscheck(Common),
    /// Every suite in turn.
    All(Common),
    /// Tidy CSV extracts of suite output.
    ExportPlotData(PlotArgs),
}

#[derive(Args, Clone, Default)]
struct Common {
    /// JSON experiment configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dimensions, as a list `1,2,3` or an inclusive range `1..10`.
    #[arg(long, value_parser = parse_dims)]
    n: Option<Dims>,
    /// α values, comma separated.
    #[arg(long, value_delimiter = ',')]
    alpha: Option<Vec<f64>>,
    #[arg(long)]
    seed: Option<u64>,
    /// Random functions per dimension.
    #[arg(long)]
    samples: Option<usize>,
    /// Lattice step of the grid suites.
    #[arg(long)]
    h: Option<f64>,
    /// Half-width of the grid box.
    #[arg(long)]
    range: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    #[arg(long, value_enum)]
    kind: PlotKind,
    /// Suite CSV to read; defaults to `<out>/<suite>.csv`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Destination; defaults to `<out>/plot-<kind>.csv`.
    #[arg(long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Debug)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {s}"));
        }
        return Ok(Dims((a..=b).collect()));
    }
    s.split(',').map(num).collect::<Result<_, _>>().map(Dims)
}

/// Failure classes, mapped to exit codes.
enum Failure {
    Assertion(String),
    Computation(anyhow::Error),
    Setup(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Assertion(_) | Failure::Computation(_) => 1,
            Failure::Setup(_) => 2,
        }
    }
}

fn configure(c: &Common, suite: Option<&str>) -> Result<ExperimentConfig> {
    let mut cfg = match &c.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = suite {
        cfg.suite = Some(s.to_string());
    }
    cfg.apply(Overrides {
        n: c.n.clone().map(|d| d.0),
        alpha: c.alpha.clone(),
        seed: c.seed,
        samples: c.samples,
        h: c.h,
        range: c.range,
        tolerance: c.tolerance,
        out: c.out.clone(),
    });
    cfg.validate()?;
    Ok(cfg)
}

fn run(name: &str, common: &Common) -> Result<(), Failure> {
    let cfg = configure(common, Some(name)).map_err(Failure::Setup)?;
    let start = std::time::Instant::now();
    let outcome = suites::run_suite(name, &cfg).map_err(Failure::Computation)?;
    let (csv, _) = report::write_outputs(name, &cfg, &outcome).map_err(Failure::Setup)?;
    let verdict = if outcome.passed() { "PASS" } else { "FAIL" };
    println!("{name}: {verdict}, {} rows in {:.1}s -> {}", outcome.table.len(), start.elapsed().as_secs_f64(), csv.display());
    for f in &outcome.failures {
        eprintln!("  {f}");
    }
    if outcome.passed() {
        Ok(())
    } else {
        Err(Failure::Assertion(format!("{name}: {} assertion(s) failed", outcome.failures.len())))
    }
}

fn export(args: &PlotArgs) -> Result<()> {
    let cfg = configure(&args.common, None)?;
    std::fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;
    let output = args.output.clone().unwrap_or_else(|| cfg.out.join(args.kind.file_name()));
    let rows = match args.kind.source() {
        None => {
            let mut table = plot::h_curve(&cfg)?;
            table.sort();
            table.write_csv(&output)?;
            table.len()
        }
        Some(suite) => {
            let input = args.input.clone().unwrap_or_else(|| cfg.out.join(format!("{suite}.csv")));
            if !input.exists() {
                bail!("{} not found; run `cdl {suite}` first", input.display());
            }
            plot::extract(args.kind, &input, &output)?
        }
    };
    println!("{rows} rows -> {}", output.display());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::ExportPlotData(args) => export(args).map_err(Failure::Setup),
        Command::All(common) => {
            // run everything, report the worst failure
            let mut worst: Option<Failure> = None;
            for name in suites::SUITES {
                if let Err(f) = run(name, common) {
                    if worst.as_ref().is_none_or(|w| f.code() > w.code()) {
                        worst = Some(f);
                    }
                }
            }
            worst.map_or(Ok(()), Err)
        }
        other => {
            let (name, common) = match other {
                Command::Transforms(c) => ("transforms", c),
                Command::ExactJl(c) => ("exact-jl", c),
                Command::TightJl(c) => ("tight-jl", c),
                Command::Mahler(c) => ("mahler", c),
                Command::RhoTable(c) => ("rho-table", c),
                Command::Covering(c) => ("covering", c),
                Command::Duality(c) => ("duality", c),
                Command::Crosscheck(c) => ("crosscheck", c),
                Command::All(_) | Command::ExportPlotData(_) => unreachable!(),
            };
            run(name, common)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Assertion(m) => eprintln!("error: {m}"),
                Failure::Computation(e) | Failure::Setup(e) => eprintln!("error: {e:#}"),
            }
            ExitCode::from(f.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_lists_and_ranges() {
        assert_eq!(parse_dims("1..3").unwrap().0, vec![1, 2, 3]);
        assert_eq!(parse_dims("1..=2").unwrap().0, vec![1, 2]);
        assert_eq!(parse_dims("2,5").unwrap().0, vec![2, 5]);
        assert!(parse_dims("3..1").is_err());
        assert!(parse_dims("x").is_err());
    }

    #[test]
    fn cli_shape_is_valid() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}

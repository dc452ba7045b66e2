//! Tidy CSV extracts of suite output for external plotting.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;

use cdl_core::analysis::{h_critical_points, h_eval, threshold};

use crate::config::ExperimentConfig;
use crate::report::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    LambdaVsAlpha,
    GammaVsN,
    HCurve,
    CoveringRatios,
}

impl PlotKind {
    /// Suite whose CSV feeds this kind, if any.
    pub fn source(self) -> Option<&'static str> {
        match self {
            PlotKind::LambdaVsAlpha | PlotKind::GammaVsN => Some("tight-jl"),
            PlotKind::CoveringRatios => Some("covering"),
            PlotKind::HCurve => None,
        }
    }

    fn columns(self) -> &'static [&'static str] {
        match self {
            PlotKind::LambdaVsAlpha => &["n", "alpha", "seed", "tolerance", "threshold", "regime", "lambda"],
            PlotKind::GammaVsN => &["n", "alpha", "seed", "tolerance", "gamma", "delta"],
            PlotKind::CoveringRatios => &[
                "pair", "n", "alpha", "seed", "tolerance", "lower", "upper_even", "upper_infc", "upper_ginf", "lp", "greedy", "ratio",
            ],
            PlotKind::HCurve => &[],
        }
    }

    pub fn file_name(self) -> String {
        let name = self.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
        format!("plot-{name}.csv")
    }
}

/// Projects the suite CSV at `input` onto the columns of `kind`.
pub fn extract(kind: PlotKind, input: &Path, output: &Path) -> Result<usize> {
    let mut reader = csv::Reader::from_path(input).with_context(|| format!("reading {}", input.display()))?;
    let header = reader.headers()?.clone();
    let wanted = kind.columns();
    let missing: Vec<&str> = wanted.iter().copied().filter(|c| !header.iter().any(|h| h == *c)).collect();
    if !missing.is_empty() {
        bail!("{} lacks columns {}", input.display(), missing.join(", "));
    }
    let index: Vec<usize> = wanted.iter().map(|c| header.iter().position(|h| h == *c).unwrap()).collect();
    let mut writer = csv::Writer::from_path(output).with_context(|| format!("creating {}", output.display()))?;
    writer.write_record(wanted)?;
    let mut rows = 0;
    for record in reader.records() {
        let record = record?;
        writer.write_record(index.iter().map(|&i| &record[i]))?;
        rows += 1;
    }
    writer.flush()?;
    Ok(rows)
}

const H_POINTS: usize = 400;

/// `(z, h_α(z), h_α'(z))` for every configured `(n, α)`, with critical
/// points flagged. `"auto"` uses `α = 2` and the exact-regime threshold.
pub fn h_curve(cfg: &ExperimentConfig) -> Result<Table> {
    let mut table = Table::new(&["z", "h", "dh", "critical"]);
    for &n in &cfg.n {
        let alphas = match cfg.alpha.list() {
            Some(v) => v.to_vec(),
            None => vec![2.0, threshold(n)?],
        };
        for alpha in alphas {
            let crit = h_critical_points(n, alpha);
            let m = n as f64 + 2.0;
            let zmax = 2.0 * m.max(alpha / m * 4.0);
            let mut zs: Vec<f64> = (1..=H_POINTS).map(|k| zmax * k as f64 / H_POINTS as f64).collect();
            if let Some((z1, z2)) = crit {
                zs.extend([z1, z2]);
            }
            zs.sort_by(f64::total_cmp);
            zs.dedup();
            for z in zs {
                let (h, dh) = h_eval(n, alpha, z)?;
                let label = match crit {
                    Some((z1, _)) if z == z1 => "local-max",
                    Some((_, z2)) if z == z2 => "local-min",
                    _ => "",
                };
                table.push(n, Some(alpha), cfg, vec![z.into(), h.into(), dh.into(), label.into()]);
            }
        }
    }
    Ok(table)
}

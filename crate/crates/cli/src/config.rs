//! Experiment configuration: a JSON file, then command-line overrides.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

/// `α` values: explicit, or `"auto"` for suite-specific multiples of the
/// threshold `ρ_n (n+2)²` (or `n²` for the duality suite).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlphaSpec {
    List(Vec<f64>),
    Keyword(String),
}

impl AlphaSpec {
    pub fn auto() -> AlphaSpec {
        AlphaSpec::Keyword("auto".into())
    }

    /// The explicit list, or `None` for `"auto"`.
    pub fn list(&self) -> Option<&[f64]> {
        match self {
            AlphaSpec::List(v) => Some(v),
            AlphaSpec::Keyword(_) => None,
        }
    }
}

/// Test-function families. Fixed families are instantiated on the unit
/// ball and cube of each dimension; `random` draws seeded polytopes and
/// profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Norm,
    Indicator,
    Psi,
    Random,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub suite: Option<String>,
    pub n: Vec<usize>,
    pub alpha: AlphaSpec,
    pub families: Vec<Family>,
    /// Lattice step of the grid suites.
    pub h: f64,
    /// Half-width of the grid box.
    pub range: f64,
    pub seed: u64,
    /// Random functions per dimension.
    pub samples: usize,
    pub tolerance: f64,
    pub out: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> ExperimentConfig {
        ExperimentConfig {
            suite: None,
            n: vec![1, 2, 3],
            alpha: AlphaSpec::auto(),
            families: vec![Family::Norm, Family::Indicator, Family::Psi, Family::Random],
            h: 1.0 / 64.0,
            range: 8.0,
            seed: 42,
            samples: 20,
            tolerance: 1e-9,
            out: PathBuf::from("cdl-out"),
        }
    }
}

/// Command-line values that replace config fields when present.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub n: Option<Vec<usize>>,
    pub alpha: Option<Vec<f64>>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub h: Option<f64>,
    pub range: Option<f64>,
    pub tolerance: Option<f64>,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn apply(&mut self, o: Overrides) {
        if let Some(v) = o.n {
            self.n = v;
        }
        if let Some(v) = o.alpha {
            self.alpha = AlphaSpec::List(v);
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.samples {
            self.samples = v;
        }
        if let Some(v) = o.h {
            self.h = v;
        }
        if let Some(v) = o.range {
            self.range = v;
        }
        if let Some(v) = o.tolerance {
            self.tolerance = v;
        }
        if let Some(v) = o.out {
            self.out = v;
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n.is_empty() || self.families.is_empty() {
            bail!("n and families must be nonempty");
        }
        if let Some(&n) = self.n.iter().find(|&&n| n == 0 || n > 10) {
            bail!("n must lie in 1..=10, got {n}");
        }
        match &self.alpha {
            AlphaSpec::List(v) if v.is_empty() => bail!("alpha list must be nonempty"),
            AlphaSpec::List(v) if v.iter().any(|a| !(*a > 0.0 && a.is_finite())) => bail!("alpha values must be positive"),
            AlphaSpec::Keyword(k) if k != "auto" => bail!("alpha must be a list or \"auto\", got {k:?}"),
            _ => {}
        }
        if !(self.h > 0.0 && self.range > self.h) {
            bail!("need 0 < h < range");
        }
        if !(self.tolerance > 0.0) {
            bail!("tolerance must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let c: ExperimentConfig = serde_json::from_str(r#"{"n": [2], "alpha": [1.5, 3]}"#).unwrap();
        assert_eq!(c.n, vec![2]);
        assert_eq!(c.alpha.list(), Some(&[1.5, 3.0][..]));
        assert_eq!(c.seed, 42);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn auto_keyword_and_bad_values() {
        let c: ExperimentConfig = serde_json::from_str(r#"{"alpha": "auto"}"#).unwrap();
        assert!(c.alpha.list().is_none());
        let bad: ExperimentConfig = serde_json::from_str(r#"{"alpha": "sometimes"}"#).unwrap();
        assert!(bad.validate().is_err());
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"colour": 1}"#).is_err());
    }

    #[test]
    fn flags_override_file() {
        let mut c = ExperimentConfig::default();
        c.apply(Overrides { n: Some(vec![1]), seed: Some(7), ..Default::default() });
        assert_eq!((c.n.clone(), c.seed), (vec![1], 7));
    }
}

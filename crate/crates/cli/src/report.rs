//! Tabular suite output: sorted rows, CSV and a JSON summary.

use std::cmp::Ordering;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::ExperimentConfig;

/// Columns every numeric row starts with.
pub const PROVENANCE: [&str; 4] = ["n", "alpha", "seed", "tolerance"];

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Missing,
}

impl Cell {
    fn rank(&self) -> u8 {
        match self {
            Cell::Int(_) | Cell::Float(_) => 0,
            Cell::Bool(_) => 1,
            Cell::Text(_) => 2,
            Cell::Missing => 3,
        }
    }

    fn number(&self) -> Option<f64> {
        match self {
            Cell::Int(v) => Some(*v as f64),
            Cell::Float(v) => Some(*v),
            _ => None,
        }
    }

    fn cmp(&self, other: &Cell) -> Ordering {
        match (self, other) {
            (Cell::Text(a), Cell::Text(b)) => a.cmp(b),
            (Cell::Bool(a), Cell::Bool(b)) => a.cmp(b),
            _ => match (self.number(), other.number()) {
                (Some(a), Some(b)) => a.total_cmp(&b),
                _ => self.rank().cmp(&other.rank()),
            },
        }
    }

    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) if v.is_infinite() => if *v > 0.0 { "inf" } else { "-inf" }.into(),
            Cell::Float(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) if v.is_finite() => Value::from(*v),
            Cell::Float(_) => Value::from(self.csv()),
            Cell::Text(s) => Value::from(s.clone()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Missing => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Cell {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Cell {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Cell {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Cell {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Cell {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Cell {
        v.map_or(Cell::Missing, Into::into)
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    /// A table whose first columns are [`PROVENANCE`], followed by `rest`.
    pub fn new(rest: &[&str]) -> Table {
        let columns = PROVENANCE.iter().chain(rest).map(|c| c.to_string()).collect();
        Table { columns, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// Appends a row: provenance then the remaining cells in column order.
    pub fn push(&mut self, n: usize, alpha: Option<f64>, cfg: &ExperimentConfig, rest: Vec<Cell>) {
        assert_eq!(rest.len() + PROVENANCE.len(), self.columns.len(), "row width");
        let mut row = vec![Cell::from(n), Cell::from(alpha), Cell::from(cfg.seed), Cell::from(cfg.tolerance)];
        row.extend(rest);
        self.rows.push(row);
    }

    pub fn extend(&mut self, other: Table) {
        assert_eq!(self.columns, other.columns, "table columns");
        self.rows.extend(other.rows);
    }

    /// Sorts rows lexicographically over all columns, so output order never
    /// depends on scheduling.
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| a.iter().zip(b).map(|(x, y)| x.cmp(y)).find(|o| o.is_ne()).unwrap_or(Ordering::Equal));
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let mut w = csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn json_rows(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(obj)
            })
            .collect()
    }
}

/// Outcome of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub table: Table,
    /// Suite-level quantities: measured constants, sweep maxima.
    pub summary: Map<String, Value>,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn new(table: Table) -> SuiteOutcome {
        SuiteOutcome { table, summary: Map::new(), failures: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Serialize)]
struct Summary<'a> {
    suite: &'a str,
    passed: bool,
    config: &'a ExperimentConfig,
    failures: &'a [String],
    summary: &'a Map<String, Value>,
    rows: Vec<Value>,
}

/// Writes `<out>/<suite>.csv` and `<out>/<suite>.json`; returns both paths.
pub fn write_outputs(suite: &str, cfg: &ExperimentConfig, outcome: &SuiteOutcome) -> Result<(PathBuf, PathBuf)> {
    std::fs::create_dir_all(&cfg.out).with_context(|| format!("creating {}", cfg.out.display()))?;
    let csv_path = cfg.out.join(format!("{suite}.csv"));
    let json_path = cfg.out.join(format!("{suite}.json"));
    outcome.table.write_csv(&csv_path)?;
    let summary = Summary {
        suite,
        passed: outcome.passed(),
        config: cfg,
        failures: &outcome.failures,
        summary: &outcome.summary,
        rows: outcome.table.json_rows(),
    };
    let text = serde_json::to_string_pretty(&summary)?;
    std::fs::write(&json_path, text + "\n").with_context(|| format!("writing {}", json_path.display()))?;
    Ok((csv_path, json_path))
}

use std::path::Path;
use std::process::{Command, Output};

fn cdl(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdl")).args(args).arg("--out").arg(out).output().expect("run cdl")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn identical_runs_write_identical_csv() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for suite in ["transforms", "mahler"] {
        let args = [suite, "--n", "1..2", "--samples", "4", "--seed", "7"];
        assert_eq!(code(&cdl(&args, a.path())), 0);
        assert_eq!(code(&cdl(&args, b.path())), 0);
        let read = |d: &Path| std::fs::read(d.join(format!("{suite}.csv"))).unwrap();
        assert_eq!(read(a.path()), read(b.path()), "{suite}");
    }
}

#[test]
fn seed_changes_random_rows() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(code(&cdl(&["mahler", "--n", "2", "--samples", "3", "--seed", "1"], a.path())), 0);
    assert_eq!(code(&cdl(&["mahler", "--n", "2", "--samples", "3", "--seed", "2"], b.path())), 0);
    let read = |d: &Path| std::fs::read_to_string(d.join("mahler.csv")).unwrap();
    assert_ne!(read(a.path()), read(b.path()));
}

#[test]
fn rho_table_has_the_first_threshold() {
    let dir = tempfile::tempdir().unwrap();
    let o = cdl(&["rho-table", "--n", "1..10"], dir.path());
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_path(dir.path().join("rho-table.csv")).unwrap();
    let header = r.headers().unwrap().clone();
    let col = header.iter().position(|h| h == "rho_n").unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 10);
    let rho1: f64 = rows[0][col].parse().unwrap();
    assert!((rho1 - 0.1718).abs() < 2e-3, "{rho1}");
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("rho-table.json")).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["config"]["seed"], 42);
}

#[test]
fn every_row_carries_provenance() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&cdl(&["exact-jl", "--n", "1,3", "--samples", "2"], dir.path())), 0);
    let mut r = csv::Reader::from_path(dir.path().join("exact-jl.csv")).unwrap();
    let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(&header[..4], ["n", "alpha", "seed", "tolerance"]);
    for row in r.records() {
        let row = row.unwrap();
        assert!((0..4).all(|i| !row[i].is_empty()));
    }
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n": [1], "unknown_field": 3}"#).unwrap();
    assert_eq!(code(&cdl(&["rho-table", "--config", bad.to_str().unwrap()], dir.path())), 2);
    assert_eq!(code(&cdl(&["rho-table", "--n", "0"], dir.path())), 2);
    assert_eq!(code(&cdl(&["rho-table", "--config", "/nonexistent.json"], dir.path())), 2);
    assert_eq!(code(&cdl(&["no-such-suite"], dir.path())), 2);
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"n": [1, 2, 3], "seed": 5}"#).unwrap();
    let o = cdl(&["rho-table", "--config", cfg.to_str().unwrap(), "--n", "2"], dir.path());
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(dir.path().join("rho-table.csv")).unwrap();
    let body: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(body.len(), 1);
    assert!(body[0].starts_with("2,,5,"), "{}", body[0]);
}

#[test]
fn failed_assertions_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    // below rounding error the product identity cannot hold
    let o = cdl(&["transforms", "--n", "1", "--samples", "2", "--tolerance", "1e-300"], dir.path());
    assert_eq!(code(&o), 1);
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("transforms.json")).unwrap()).unwrap();
    assert_eq!(json["passed"], false);
    assert!(!json["failures"].as_array().unwrap().is_empty());
}

#[test]
fn plot_exports() {
    let dir = tempfile::tempdir().unwrap();
    let o = cdl(&["export-plot-data", "--kind", "lambda-vs-alpha"], dir.path());
    assert_eq!(code(&o), 2, "missing suite output");

    assert_eq!(code(&cdl(&["tight-jl", "--n", "2", "--alpha", "1.5,3,10"], dir.path())), 0);
    assert_eq!(code(&cdl(&["export-plot-data", "--kind", "lambda-vs-alpha"], dir.path())), 0);
    let mut r = csv::Reader::from_path(dir.path().join("plot-lambda-vs-alpha.csv")).unwrap();
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    let lambda = |i: usize| rows[i][6].parse::<f64>().unwrap();
    // 10 lies beyond the threshold 16ρ₂
    assert!((lambda(2) - 0.5).abs() < 1e-9);
    assert!(lambda(0) > 0.5);

    assert_eq!(code(&cdl(&["export-plot-data", "--kind", "h-curve", "--n", "1", "--alpha", "2"], dir.path())), 0);
    let text = std::fs::read_to_string(dir.path().join("plot-h-curve.csv")).unwrap();
    assert!(text.lines().any(|l| l.starts_with("1,2,42,") && l.contains(",1,") && l.ends_with("local-max")));
    assert!(text.lines().any(|l| l.contains(",2,") && l.ends_with("local-min")));

    let wrong = dir.path().join("rho-table.csv");
    assert_eq!(code(&cdl(&["rho-table"], dir.path())), 0);
    let o = cdl(&["export-plot-data", "--kind", "covering-ratios", "--input", wrong.to_str().unwrap()], dir.path());
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("lacks columns"));
}

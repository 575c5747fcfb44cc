//! End-to-end tests of the `qtorus` binary: file formats, exit codes and
//! reproducibility.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn qtorus(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qtorus"));
    cmd.args(args).env_remove("QTORUS_GRID_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn write_file(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Data rows of a CSV written by the tool: comment lines dropped, header split off.
fn csv_rows(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let text = fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines
        .map(|l| l.split(',').map(String::from).collect())
        .collect();
    (header, rows)
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn norms_of_a_single_mode() {
    let dir = TempDir::new().unwrap();
    let input = write_file(dir.path(), "f.jsonl", "{\"k\":[2],\"re\":1.0,\"im\":0.0}\n");
    let out = dir.path().join("out");
    let o = qtorus(
        &[
            "norms",
            "--input",
            input.to_str().unwrap(),
            "--Jmax",
            "40",
            "--out",
            out.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(out.join("profile.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# qtorus "));
    assert!(lines.next().unwrap().starts_with("# config: {"));
    let (header, rows) = csv_rows(&out.join("profile.csv"));
    assert_eq!(header, ["j", "lnM_j"]);
    assert_eq!(rows.len(), 41);
    for (j, row) in rows.iter().enumerate() {
        assert_eq!(row[0], j.to_string());
        let v: f64 = row[1].parse().unwrap();
        assert!((v - j as f64 * 2f64.ln()).abs() < 1e-12, "j={j}: {v}");
    }
}

#[test]
fn tau_writes_all_tables() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = qtorus(
        &[
            "tau",
            "--family",
            "profile:rule=factorial:s=1:Jmax=100",
            "--m",
            "1..50",
            "--rmax",
            "50",
            "--out",
            out.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, rows) = csv_rows(&out.join("tm.csv"));
    assert_eq!(header, ["m", "lnT", "lnTheta", "d_m", "positivity_flag"]);
    assert_eq!(rows.len(), 50);
    let (header, rows) = csv_rows(&out.join("tau.csv"));
    assert_eq!(header, ["r", "lnTau", "lnTauShifted"]);
    assert!(rows.len() > 100);
    let summary = json(&out.join("tau.json"));
    assert_eq!(summary["header"]["artifact"], "qtorus");
    assert_eq!(summary["ln_tau_non_increasing"], true);
    assert_eq!(summary["ln_tau_concave_in_ln_r"], true);
    assert_eq!(summary["chain_holds"], true);
}

#[test]
fn verdict_on_a_factorial_profile() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = qtorus(
        &[
            "verdict",
            "--family",
            "profile:rule=factorial:s=1:Jmax=200",
            "--m",
            "1..400",
            "--out",
            out.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&out.join("verdict.json"));
    assert_eq!(v["carleman"]["verdict"], "quasianalytic-trend");
    assert_eq!(v["witness"]["classification"], "divergent-trend");
    let (header, _) = csv_rows(&out.join("carleman.csv"));
    assert_eq!(header, ["r", "negLnTau", "argmin", "I_R"]);
    assert!(fs::read_to_string(out.join("witness.svg"))
        .unwrap()
        .starts_with("<svg"));
}

#[test]
fn interp_reports_exactness_and_exports() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let o = qtorus(
        &[
            "interp",
            "--family",
            "analytic:a=1:K=10",
            "--n",
            "2",
            "--m",
            "2..6/2",
            "--t",
            "1.2",
            "--samples",
            "32",
            "--export",
            "--out",
            out.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (header, rows) = csv_rows(&out.join("interp.csv"));
    assert_eq!(header[0], "m");
    assert_eq!(rows.len(), 3);
    for row in &rows {
        let err: f64 = row[2].parse().unwrap();
        assert!(err < 1e-9, "{row:?}");
    }
    for m in [2, 4, 6] {
        let text = fs::read_to_string(out.join(format!("interpolant_m{m}.jsonl"))).unwrap();
        assert!(text.lines().all(|l| l.starts_with("{\"k\":[")));
    }
}

#[test]
fn diagonal_engine_flags_uncovered_modes_and_degenerate_node() {
    let dir = TempDir::new().unwrap();
    let input = write_file(
        dir.path(),
        "f.jsonl",
        "{\"k\":[0,0],\"re\":1.0,\"im\":0.0}\n{\"k\":[1,2],\"re\":0.5,\"im\":0.0}\n",
    );
    let out = dir.path().join("out");
    let o = qtorus(
        &[
            "interp",
            "--input",
            input.to_str().unwrap(),
            "--m",
            "4..4",
            "--t",
            "1.1",
            "--engine",
            "diagonal",
            "--z0",
            "1,1",
            "--samples",
            "16",
            "--out",
            out.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report = json(&out.join("interp.json"));
    let audit = &report["entries"][0]["audit"];
    assert_eq!(audit["engine"], "diagonal");
    assert_eq!(audit["degenerate_z0"], true);
    assert_eq!(audit["uncovered_modes"].as_array().unwrap().len(), 1);
    assert_eq!(audit["passed"], false);
}

#[test]
fn malformed_inputs_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("bad.jsonl", "{\"k\":[1],\"re\":oops}\n", "line 1"),
        (
            "dup.jsonl",
            "{\"k\":[1],\"re\":1.0,\"im\":0.0}\n{\"k\":[1],\"re\":2.0,\"im\":0.0}\n",
            "duplicate index",
        ),
        (
            "dim.jsonl",
            "{\"k\":[1],\"re\":1.0,\"im\":0.0}\n{\"k\":[1,2],\"re\":2.0,\"im\":0.0}\n",
            "dimension mismatch",
        ),
    ];
    for (name, body, needle) in cases {
        let input = write_file(dir.path(), name, body);
        let out = dir.path().join("out");
        let o = qtorus(
            &[
                "norms",
                "--input",
                input.to_str().unwrap(),
                "--out",
                out.to_str().unwrap(),
            ],
            &[],
        );
        assert_eq!(o.status.code(), Some(2), "{name}");
        assert!(stderr(&o).contains(needle), "{name}: {}", stderr(&o));
    }
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();
    let cases: [&[&str]; 5] = [
        &["norms", "--out", out],
        &["norms", "--family", "cubic:a=1", "--out", out],
        &["verdict", "--family", "analytic:a=-1", "--out", out],
        &["interp", "--family", "analytic:K=5", "--out", out],
        &[
            "tau",
            "--family",
            "analytic:K=5",
            "--m",
            "5..2",
            "--out",
            out,
        ],
    ];
    for args in cases {
        let o = qtorus(args, &[]);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
    assert_eq!(qtorus(&["--help"], &[]).status.code(), Some(0));
}

#[test]
fn degenerate_functions_exit_with_three() {
    let dir = TempDir::new().unwrap();
    let zero = write_file(
        dir.path(),
        "zero.jsonl",
        "{\"k\":[3],\"re\":0.0,\"im\":0.0}\n",
    );
    let out = dir.path().join("out");
    let out = out.to_str().unwrap();
    let o = qtorus(
        &["tau", "--input", zero.to_str().unwrap(), "--out", out],
        &[],
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = qtorus(
        &[
            "verdict",
            "--family",
            "profile:rule=constant:value=-inf:Jmax=20",
            "--out",
            out,
        ],
        &[],
    );
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    assert!(stderr(&o).contains("degenerate"));
}

#[test]
fn oversized_grid_exits_with_four() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let args = [
        "interp",
        "--family",
        "analytic:K=4",
        "--n",
        "2",
        "--m",
        "4..4",
        "--t",
        "1.1",
        "--samples",
        "8",
        "--out",
        out.to_str().unwrap(),
    ];
    let o = qtorus(&args, &[("QTORUS_GRID_CAP", "10")]);
    assert_eq!(o.status.code(), Some(4), "{}", stderr(&o));
    assert!(stderr(&o).contains("exceeds the cap"));
    assert_eq!(qtorus(&args, &[]).status.code(), Some(0));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let runs: Vec<Vec<&str>> = vec![
        vec!["norms", "--family", "gevrey:s=2:K=200"],
        vec!["tau", "--family", "analytic:a=0.5:K=50", "--m", "1..40"],
        vec!["verdict", "--family", "profile:rule=factorial:s=2:Jmax=100"],
        vec![
            "interp",
            "--family",
            "analytic:K=20",
            "--m",
            "2..8",
            "--tm",
            "--samples",
            "64",
            "--seed",
            "7",
        ],
    ];
    for (i, args) in runs.iter().enumerate() {
        let a = dir.path().join(format!("a{i}"));
        let b = dir.path().join(format!("b{i}"));
        for out in [&a, &b] {
            let mut full = args.clone();
            full.extend(["--out", out.to_str().unwrap()]);
            let o = qtorus(&full, &[]);
            assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        }
        let mut names: Vec<_> = fs::read_dir(&a)
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        assert!(!names.is_empty());
        for name in names {
            assert_eq!(
                fs::read(a.join(&name)).unwrap(),
                fs::read(b.join(&name)).unwrap(),
                "{args:?} {name:?}"
            );
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn twoslit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoslit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, d: f64, extra: &str) -> PathBuf {
    // θ = 2h/l = 2e-3 and k = 1e3, so kθ = 2 and the fringe period in y is 2π.
    let path = dir.join(name);
    let text = format!(
        "k = 1e3\nh = 1e-3\nl = 1\nm = 1\nd = {d:e}\n\
         y_min = -6.283185307179586\ny_max = 6.283185307179586\ny_steps = 9\n\
         z_min = -6.283185307179586\nz_max = 6.283185307179586\nz_steps = 9\n{extra}"
    );
    fs::write(&path, text).unwrap();
    path
}

fn read_psi(path: &Path) -> Vec<(f64, f64, f64)> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|x| x.parse().unwrap()).collect();
            (v[0], v[1], v[2])
        })
        .collect()
}

#[test]
fn quadrature_and_closed_files_agree() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "p.cfg", 0.5, "");
    let closed = dir.path().join("closed.csv");
    let quad = dir.path().join("quad.csv");
    for (method, out) in [("closed", &closed), ("quadrature", &quad)] {
        let o = twoslit(&["pattern", "--config", cfg.to_str().unwrap(), "--method", method, "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["regime"], "intermediate");
    }
    let a = read_psi(&closed);
    let b = read_psi(&quad);
    assert_eq!(a.len(), 81);
    for (p, q) in a.iter().zip(&b) {
        assert_eq!((p.0, p.1), (q.0, q.1));
        assert!((p.2 - q.2).abs() <= 1e-8, "{p:?} vs {q:?}");
    }
}

#[test]
fn qi_grid_is_constant_along_diagonals() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "p.cfg", 500.0, "method = qi\n");
    let out = dir.path().join("qi.csv");
    let o = twoslit(&["pattern", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let rows = read_psi(&out);
    let at = |i: usize, j: usize| rows[i * 9 + j].2;
    for i in 1..9 {
        for j in 1..9 {
            assert!((at(i, j) - at(i - 1, j - 1)).abs() <= 1e-11);
        }
    }
}

#[test]
fn ci_grid_factorizes() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "p.cfg", 0.005, "");
    let out = dir.path().join("ci.csv");
    assert!(twoslit(&["pattern", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]).status.success());
    let rows = read_psi(&out);
    let at = |i: usize, j: usize| rows[i * 9 + j].2;
    let mut worst = 0.0f64;
    for i in 0..9 {
        for p in 0..9 {
            for j in 0..9 {
                for q in 0..9 {
                    worst = worst.max((at(i, j) * at(p, q) - at(i, q) * at(p, j)).abs());
                }
            }
        }
    }
    assert!(worst <= 1e-3, "{worst}");
}

#[test]
fn output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let cfg = write_config(dir.path(), "p.cfg", 1.5, "");
    let run = || {
        let o = twoslit(&["pattern", "--config", cfg.to_str().unwrap(), "--method", "quadrature", "--format", "json"]);
        assert!(o.status.success());
        o.stdout
    };
    assert_eq!(run(), run());
    assert_eq!(twoslit(&["table2", "--format", "json"]).stdout, twoslit(&["table2", "--format", "json"]).stdout);
}

#[test]
fn enumerate_round_trips() {
    let o = twoslit(&["enumerate"]);
    assert!(o.status.success());
    let events: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(events.len(), 18);
    for e in &events {
        let short = e["short"].as_str().unwrap();
        let again: Value = serde_json::from_str(&stdout(&twoslit(&["classify", short]))).unwrap();
        assert_eq!(again["short"], e["short"]);
        let via_expanded: Value =
            serde_json::from_str(&stdout(&twoslit(&["classify", e["expanded"].as_str().unwrap()]))).unwrap();
        assert_eq!(via_expanded["short"], e["short"]);
    }
}

#[test]
fn golden_check_passes_and_absolute_rule_fails() {
    let o = twoslit(&["table2", "--golden-check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("X(1,2)+Y(2,1)"));
    let o = twoslit(&["table2", "--golden-check", "--rule", "absolute"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_suites() {
    let o = twoslit(&["verify", "--suite", "table2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("18/18 records match"));
    assert_eq!(twoslit(&["verify", "--suite", "events"]).status.code(), Some(0));
    assert_eq!(twoslit(&["verify", "--suite", "nope"]).status.code(), Some(1));
}

#[test]
fn validation_failures_exit_1() {
    assert_eq!(twoslit(&["classify", "E(1,2)+Y(1,2)"]).status.code(), Some(1));
    assert_eq!(twoslit(&["generate", "X(1,2)+Y(1,2)"]).status.code(), Some(1));
    assert_eq!(twoslit(&["regime", "--config", "/nonexistent/cfg"]).status.code(), Some(1));
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.cfg");
    fs::write(&bad, "k = 1\nh = oops\n").unwrap();
    let o = twoslit(&["regime", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn event_commands() {
    let g: Vec<Value> = serde_json::from_str(&stdout(&twoslit(&["generate", "W(1,2)+W(2,1)"]))).unwrap();
    assert_eq!(g.len(), 4);
    let r: Value = serde_json::from_str(&stdout(&twoslit(&["rotate", "E(1,2)+W(1,2)"]))).unwrap();
    assert_eq!(r["short"], "N(1,2)+S(1,2)");
    let s: Value = serde_json::from_str(&stdout(&twoslit(&["symmetries", "A(1)D(2)+A(2)D(1)"]))).unwrap();
    assert_eq!(s["symmetries"], "<(A,D), (1,2)>");
    let regime: Value = {
        let dir = TempDir::new().unwrap();
        let cfg = write_config(dir.path(), "p.cfg", 0.0, "");
        serde_json::from_str(&stdout(&twoslit(&["regime", "--config", cfg.to_str().unwrap()]))).unwrap()
    };
    assert_eq!(regime["regime"], "CI");
    assert_eq!(regime["momentum_ratio"], "inf");
}

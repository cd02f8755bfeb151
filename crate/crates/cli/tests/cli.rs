// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::{Command, Output};

fn cvdv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cvdv")).args(args).output().unwrap()
}

fn program(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cvdv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn estimate_worked_example() {
    let o = cvdv(&["estimate", "--gamma", "10", "--eps", "1e-6"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n=6\n");
}

#[test]
fn one_conditional_displacement_costs_112_cnots() {
    let p = program("cd.cvdv", "mode m=1 n=7\nqubit a=1\nCD q0 m0 0.3-0.2i\n");
    let o = cvdv(&["compile", p.to_str().unwrap(), "--cd-lowering", "phase"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["expanded"]["cnot"], 112);
    let o = cvdv(&["compile", p.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"]["cnot"], 14);
    assert_eq!(v["counts"]["qft"], 2);
}

#[test]
fn compile_text_and_expansion() {
    let p = program("d.cvdv", "mode m=1 n=7\nD 0 2+1i\n");
    let o = cvdv(&["compile", p.to_str().unwrap(), "--out", "text", "--expand"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("expanded h=14 rz="));
    assert!(s.contains("cnot=84"));
    assert!(s.lines().any(|l| l.starts_with("phase ")));
}

#[test]
fn simulate_is_deterministic() {
    let p = program("sim.cvdv", "mode m=2 n=4\nqubit a=1\nprep fock 0 2\nBS 0 1 1.2\nMEAS homodyne 0 q\nMEAS heterodyne 1\nMEAS photon 0 gamma=3\n");
    let a = cvdv(&["simulate", p.to_str().unwrap(), "--seed", "17", "--shots", "4"]);
    let b = cvdv(&["simulate", p.to_str().unwrap(), "--seed", "17", "--shots", "4"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout(&a).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0]["protocol"], "homodyne");
    assert_eq!(lines[11]["shot"], 3);
}

#[test]
fn parse_errors_exit_one_with_position() {
    let p = program("bad.cvdv", "mode m=2 n=4\nBS 0 0 1.0\n");
    let o = cvdv(&["compile", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains(":2:6: semantic error"), "{err}");
}

#[test]
fn unknown_flags_and_missing_files_are_user_errors() {
    assert_eq!(cvdv(&["estimate", "--gamma", "3", "--eps", "0.1", "--bogus"]).status.code(), Some(1));
    assert_eq!(cvdv(&["simulate", "/nonexistent/prog"]).status.code(), Some(1));
    assert_eq!(cvdv(&["estimate", "--gamma", "3", "--eps", "2"]).status.code(), Some(1));
}

#[test]
fn budget_overflow_is_a_user_error() {
    let p = program("big.cvdv", "mode m=3 n=9\n");
    assert_eq!(cvdv(&["simulate", p.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn sweep_then_fit() {
    let dir = std::env::temp_dir().join(format!("cvdv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let table = dir.join("sweep.csv");
    let o = cvdv(&["qft-error", "--n", "5..6", "-o", table.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&table).unwrap();
    assert!(text.starts_with("n,k,epsilon\n"));
    let o = cvdv(&["fit-lemma1", "--in", table.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["per_n"]["6"][0].as_f64().unwrap() > 0.0);
    assert_eq!(v["meta"].as_array().unwrap().len(), 4);
}

#[test]
fn gate_error_and_advantage_tables() {
    let o = cvdv(&["gate-error", "--gate", "D", "--param", "2", "--n", "5", "--kmax", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.starts_with("gate,n,k,epsilon\n"));
    assert_eq!(s.lines().count(), 5);
    let o = cvdv(&["advantage", "--nmax", "7"]);
    let s = stdout(&o);
    assert!(s.starts_with("n,gamma_cutoff,tau_ratio\n"));
    assert!(s.contains("\n7,"));
    assert!(s.trim_end().ends_with(",112.0"));
}

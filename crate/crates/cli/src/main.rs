// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! `cvdv`: simulate and compile circuit programs, run error sweeps and
//! resource estimates.
//!
//! Exit status: 0 on success, 1 for user errors (bad flags, unreadable or
//! invalid input), 2 for internal failures.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cvdv::errorlab::{self, csv, fit::qft_sweep, REFERENCE_META};
use cvdv::program::{parse, Program};
use cvdv::{compile, CdLowering, CompileOptions, Complex64, GateCounts, HybridGate};

#[derive(Parser)]
#[command(name = "cvdv", version, about = "Qubit simulation of hybrid oscillator-qubit circuits")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(short = 'o', long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lowering {
    Parity,
    Phase,
}

impl From<Lowering> for CompileOptions {
    fn from(l: Lowering) -> Self {
        CompileOptions {
            cd_lowering: match l {
                Lowering::Parity => CdLowering::Parity,
                Lowering::Phase => CdLowering::ConditionalPhase,
            },
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GateKind {
    #[value(name = "D")]
    D,
    #[value(name = "R")]
    R,
    #[value(name = "S")]
    S,
    #[value(name = "BS")]
    Bs,
}

#[derive(Subcommand)]
enum Command {
    /// Run a program and emit one JSON line per measurement.
    Simulate {
        program: PathBuf,
        /// Overrides the program's `seed` line; 0 if neither is given.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        shots: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
        #[arg(long, value_enum, default_value = "parity")]
        cd_lowering: Lowering,
    },
    /// Compile a program and report gate counts.
    Compile {
        program: PathBuf,
        /// Also list the full elementary circuit with QFT units expanded.
        #[arg(long)]
        expand: bool,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
        #[arg(long, value_enum, default_value = "parity")]
        cd_lowering: Lowering,
    },
    /// QFT error of Fock states; columns n,k,epsilon.
    QftError {
        /// Register sizes, `a..b` (inclusive) or a single value.
        #[arg(long, default_value = "5..10")]
        n: String,
        /// Largest Fock level; by default each register is swept until the
        /// error exceeds 0.1.
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
    },
    /// Fit the per-Fock error model to a `qft-error` table.
    FitLemma1 {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        out: Format,
    },
    /// Gate error on Fock inputs (`|k, 0⟩` for BS); columns gate,n,k,epsilon.
    GateError {
        #[arg(long, value_enum)]
        gate: GateKind,
        /// Complex `a+bi` for D, real otherwise.
        #[arg(long, allow_hyphen_values = true)]
        param: String,
        #[arg(long, default_value = "5..8")]
        n: String,
        #[arg(long, default_value_t = 12)]
        kmax: usize,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
    },
    /// Qubits per mode for Fock cutoff Γ at error ε.
    Estimate {
        #[arg(long)]
        gamma: usize,
        #[arg(long)]
        eps: f64,
    },
    /// Fock cutoff and CNOT ratio per register size; columns n,gamma_cutoff,tau_ratio.
    Advantage {
        #[arg(long, default_value_t = 12)]
        nmax: usize,
        #[arg(long, default_value_t = 1e-4)]
        eps: f64,
        #[arg(long, value_enum, default_value = "csv")]
        out: Format,
    },
}

enum Failure {
    User(String),
    Internal(String),
}

impl From<cvdv::Error> for Failure {
    fn from(e: cvdv::Error) -> Self {
        match e {
            cvdv::Error::Truncation { .. } | cvdv::Error::ZeroNorm => Failure::Internal(e.to_string()),
            other => Failure::User(other.to_string()),
        }
    }
}

type Outcome = Result<Vec<u8>, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = run(cli.command).and_then(|bytes| emit(cli.output.as_ref(), &bytes));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::User(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(2)
        }
    }
}

fn emit(path: Option<&PathBuf>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| Failure::User(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(bytes).map_err(|e| Failure::Internal(e.to_string())),
    }
}

fn user(m: impl Into<String>) -> Failure {
    Failure::User(m.into())
}

fn read_program(path: &PathBuf) -> Result<Program, Failure> {
    let text = fs::read_to_string(path).map_err(|e| user(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|d| user(format!("{}:{d}", path.display())))
}

fn parse_range(s: &str) -> Result<Vec<usize>, Failure> {
    let bad = || user(format!("`{s}` is not a range like 5..10"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let v = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

fn require(out: Format, allowed: &[Format], name: &str) -> Result<(), Failure> {
    if allowed.contains(&out) {
        Ok(())
    } else {
        Err(user(format!("unsupported --out for {name}")))
    }
}

fn json_bytes(v: &serde_json::Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Simulate { program, seed, shots, out, cd_lowering } => {
            require(out, &[Format::Json, Format::Text], "simulate")?;
            let p = read_program(&program)?;
            let seed = seed.or(p.seed).unwrap_or(0);
            let (records, _) = p.execute(seed, shots, &cd_lowering.into())?;
            let mut buf = String::new();
            for r in &records {
                match out {
                    Format::Json => buf.push_str(&serde_json::to_string(r).expect("serializable")),
                    _ => buf.push_str(&format!("{} {} {}", r.shot, r.protocol, r.outcome)),
                }
                buf.push('\n');
            }
            Ok(buf.into_bytes())
        }
        Command::Compile { program, expand, out, cd_lowering } => {
            require(out, &[Format::Json, Format::Text], "compile")?;
            let p = read_program(&program)?;
            compile_report(&p, expand, out, &cd_lowering.into())
        }
        Command::QftError { n, kmax, out } => {
            require(out, &[Format::Csv, Format::Json], "qft-error")?;
            let pts = qft_sweep(&parse_range(&n)?, kmax);
            match out {
                Format::Csv => {
                    let mut buf = Vec::new();
                    csv::write_sweep(&mut buf, &pts)?;
                    Ok(buf)
                }
                _ => Ok(json_bytes(&serde_json::to_value(&pts).expect("serializable"))),
            }
        }
        Command::FitLemma1 { input, out } => {
            require(out, &[Format::Json], "fit-lemma1")?;
            let file = fs::File::open(&input).map_err(|e| user(format!("{}: {e}", input.display())))?;
            let fit = errorlab::fit_points(&csv::read_sweep(file)?);
            let rel = fit.meta.map(|m| {
                let v: Vec<f64> = m.iter().zip(REFERENCE_META).map(|(a, b)| (a - b) / b).collect();
                v
            });
            let mut v = serde_json::to_value(&fit).expect("serializable");
            v["reference_meta"] = serde_json::json!(REFERENCE_META);
            v["relative_deviation"] = serde_json::json!(rel);
            Ok(json_bytes(&v))
        }
        Command::GateError { gate, param, n, kmax, out } => {
            require(out, &[Format::Csv, Format::Json], "gate-error")?;
            let real = || param.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| user(format!("bad --param `{param}`")));
            let g = match gate {
                GateKind::D => HybridGate::D {
                    mode: 0,
                    alpha: cvdv::program::parse_complex(&param)
                        .filter(|z: &Complex64| z.re.is_finite() && z.im.is_finite())
                        .ok_or_else(|| user(format!("bad --param `{param}`")))?,
                },
                GateKind::R => HybridGate::R { mode: 0, theta: real()? },
                GateKind::S => HybridGate::S { mode: 0, r: real()? },
                GateKind::Bs => HybridGate::BS { a: 0, b: 1, theta: real()? },
            };
            let pts = errorlab::gate_error_sweep(&g, &parse_range(&n)?, kmax, &CompileOptions::default())?;
            match out {
                Format::Csv => {
                    let mut buf = Vec::new();
                    csv::write_gate_sweep(&mut buf, &pts)?;
                    Ok(buf)
                }
                _ => Ok(json_bytes(&serde_json::to_value(&pts).expect("serializable"))),
            }
        }
        Command::Estimate { gamma, eps } => {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(user("--eps must lie in (0, 1)"));
            }
            Ok(format!("n={}\n", errorlab::qubits_for(gamma, eps)).into_bytes())
        }
        Command::Advantage { nmax, eps, out } => {
            require(out, &[Format::Csv, Format::Json], "advantage")?;
            if nmax == 0 || !(eps > 0.0 && eps < 1.0) {
                return Err(user("need --nmax >= 1 and --eps in (0, 1)"));
            }
            let rows = errorlab::advantage_rows(nmax, eps, &REFERENCE_META);
            match out {
                Format::Csv => {
                    let mut buf = Vec::new();
                    csv::write_advantage(&mut buf, &rows)?;
                    Ok(buf)
                }
                _ => Ok(json_bytes(&serde_json::to_value(&rows).expect("serializable"))),
            }
        }
    }
}

fn compile_report(p: &Program, expand: bool, out: Format, opts: &CompileOptions) -> Outcome {
    let layout = p.layout()?;
    let n = p.n;
    let mut total = GateCounts::default();
    let mut rows = Vec::new();
    let mut circuit = cvdv::CompiledCircuit::new();
    for g in p.gates() {
        let c = compile(g, &layout, opts)?;
        let k = c.counts();
        total += k;
        rows.push((g.name(), k));
        circuit.extend(c);
    }
    let expanded = total.expanded(n, false);
    match out {
        Format::Json => {
            let mut v = serde_json::json!({
                "modes": p.modes,
                "qubits_per_mode": n,
                "bare_qubits": p.dv,
                "gates": rows.iter().map(|(name, k)| serde_json::json!({
                    "gate": name,
                    "counts": k,
                    "expanded": k.expanded(n, false),
                })).collect::<Vec<_>>(),
                "counts": total,
                "expanded": expanded,
            });
            if expand {
                v["circuit"] = circuit.to_json();
            }
            Ok(json_bytes(&v))
        }
        _ => {
            let mut s = format!("# modes={} n={} bare_qubits={}\n", p.modes, n, p.dv);
            for (name, k) in &rows {
                s.push_str(&format!("{name:<4} {}\n", fmt_counts(k)));
            }
            s.push_str(&format!("total {}\n", fmt_counts(&total)));
            s.push_str(&format!(
                "expanded h={} rz={} cnot={} x={} swap={}\n",
                expanded.h, expanded.rz, expanded.cnot, expanded.x, expanded.swap
            ));
            if expand {
                s.push_str(&circuit.to_text(true));
            }
            Ok(s.into_bytes())
        }
    }
}

fn fmt_counts(k: &GateCounts) -> String {
    format!("qft={} rz={} cz={} cnot={} x={} swap={}", k.qft, k.rz, k.cz, k.cnot, k.x, k.swap)
}

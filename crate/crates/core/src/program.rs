// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! A line-oriented circuit language.
//!
//! ```text
//! mode m=2 n=6          # two modes, six qubits each
//! qubit a=1             # one bare qubit
//! seed 7
//! prep fock 0 3
//! D 0 1.0+0.5i
//! BS 0 1 1.5707963
//! CD q0 m0 0.3-0.2i
//! CR q0 m0 0.785398
//! MEAS homodyne 0 q
//! MEAS heterodyne 1
//! MEAS photon 0 gamma=3 ancilla=q0
//! ```
//!
//! Angles are radians; complex literals are written `a+bi` without spaces.
//! Modes may be written `0` or `m0`, bare qubits `q0`. `gamma` is the largest
//! photon number to resolve.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::compiler::{compile, CompileOptions, HybridGate};
use crate::engine::{RegisterLayout, StateVector};
use crate::error::{Error, Result};
use crate::grid::{encode_fock, Basis};
use crate::measure::{heterodyne, homodyne, photon_count, MeasurementRecord};
use crate::{seeded_rng, Complex64};

/// Initial state of one mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Prep {
    Fock(usize),
}

/// Measurement statements.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Measurement {
    Homodyne { mode: usize, basis: Basis },
    Heterodyne { mode: usize },
    Photon { mode: usize, cutoff: usize, ancilla: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Statement {
    Prep { mode: usize, prep: Prep },
    Gate(HybridGate),
    Measure(Measurement),
}

/// A parsed program.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Program {
    pub modes: usize,
    pub n: usize,
    pub dv: usize,
    pub seed: Option<u64>,
    pub statements: Vec<Statement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiagnosticKind {
    Syntax,
    Semantic,
}

/// A parse failure with its 1-based source position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::Semantic => "semantic error",
        };
        write!(f, "{}:{}: {kind}: {}", self.line, self.column, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end: usize,
}

impl<'a> Line<'a> {
    fn new(number: usize, raw: &'a str) -> Self {
        let code = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (col, (i, ch)) in code.char_indices().enumerate() {
            if ch.is_whitespace() {
                if let Some((s, c)) = start.take() {
                    tokens.push(Token { text: &code[s..i], column: c + 1 });
                }
            } else if start.is_none() {
                start = Some((i, col));
            }
        }
        if let Some((s, c)) = start {
            tokens.push(Token { text: &code[s..], column: c + 1 });
        }
        let end = code.chars().count() + 1;
        Self { number, tokens, end }
    }

    fn err(&self, kind: DiagnosticKind, column: usize, message: impl Into<String>, expected: &[&str]) -> Diagnostic {
        Diagnostic {
            kind,
            line: self.number,
            column,
            message: message.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn syntax(&self, column: usize, message: impl Into<String>, expected: &[&str]) -> Diagnostic {
        self.err(DiagnosticKind::Syntax, column, message, expected)
    }

    fn semantic(&self, column: usize, message: impl Into<String>) -> Diagnostic {
        self.err(DiagnosticKind::Semantic, column, message, &[])
    }

    fn arg(&self, i: usize, what: &str) -> std::result::Result<Token<'a>, Diagnostic> {
        self.tokens.get(i).copied().ok_or_else(|| self.syntax(self.end, "unexpected end of line", &[what]))
    }

    fn finish(&self, count: usize) -> std::result::Result<(), Diagnostic> {
        match self.tokens.get(count) {
            Some(t) => Err(self.syntax(t.column, format!("unexpected token `{}`", t.text), &["end of line"])),
            None => Ok(()),
        }
    }

    fn uint(&self, i: usize, what: &str) -> std::result::Result<usize, Diagnostic> {
        let t = self.arg(i, what)?;
        t.text.parse().map_err(|_| self.syntax(t.column, format!("`{}` is not a nonnegative integer", t.text), &[what]))
    }

    fn keyed(&self, i: usize, key: &str) -> std::result::Result<usize, Diagnostic> {
        let t = self.arg(i, &format!("{key}=<integer>"))?;
        let value = t
            .text
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .ok_or_else(|| self.syntax(t.column, format!("unexpected `{}`", t.text), &[&format!("{key}=<integer>")]))?;
        value
            .parse()
            .map_err(|_| self.syntax(t.column + key.len() + 1, format!("`{value}` is not a nonnegative integer"), &["integer"]))
    }

    fn real(&self, i: usize) -> std::result::Result<f64, Diagnostic> {
        let t = self.arg(i, "real number")?;
        let v: f64 = t.text.parse().map_err(|_| self.syntax(t.column, format!("`{}` is not a number", t.text), &["real number"]))?;
        if !v.is_finite() {
            return Err(self.semantic(t.column, "parameter must be finite"));
        }
        Ok(v)
    }

    fn complex(&self, i: usize) -> std::result::Result<Complex64, Diagnostic> {
        let t = self.arg(i, "complex number")?;
        let z = parse_complex(t.text)
            .ok_or_else(|| self.syntax(t.column, format!("`{}` is not a complex number", t.text), &["a+bi"]))?;
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(self.semantic(t.column, "parameter must be finite"));
        }
        Ok(z)
    }

    fn register(&self, i: usize, prefix: char, bare_ok: bool, what: &str) -> std::result::Result<(usize, usize), Diagnostic> {
        let t = self.arg(i, what)?;
        let digits = match t.text.strip_prefix(prefix) {
            Some(d) => d,
            None if bare_ok => t.text,
            None => return Err(self.syntax(t.column, format!("unexpected `{}`", t.text), &[what])),
        };
        digits
            .parse()
            .map(|v| (v, t.column))
            .map_err(|_| self.syntax(t.column, format!("`{}` is not a register", t.text), &[what]))
    }
}

/// Parse `a`, `bi`, `a+bi` or `a-bi`.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|re| Complex64::new(re, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&p| (bytes[p] == b'+' || bytes[p] == b'-') && !matches!(bytes[p - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(p) => (body[..p].parse().ok()?, &body[p..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().ok()?,
    };
    Some(Complex64::new(re, im))
}

fn format_complex(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

const STATEMENTS: &[&str] = &["mode", "qubit", "seed", "prep", "D", "R", "S", "BS", "CD", "CR", "CS", "CBS", "MEAS"];

/// Parse program text.
pub fn parse(text: &str) -> std::result::Result<Program, Diagnostic> {
    let mut header: Option<(usize, usize)> = None;
    let mut dv: Option<usize> = None;
    let mut seed = None;
    let mut statements = Vec::new();
    let mut gates_seen = false;
    for (idx, raw) in text.lines().enumerate() {
        let line = Line::new(idx + 1, raw);
        let Some(head) = line.tokens.first().copied() else { continue };
        let need_modes = |line: &Line| {
            header.ok_or_else(|| line.semantic(head.column, "registers used before the `mode` declaration"))
        };
        match head.text {
            "mode" => {
                if header.is_some() {
                    return Err(line.semantic(head.column, "`mode` declared twice"));
                }
                if !statements.is_empty() {
                    return Err(line.semantic(head.column, "declarations must precede statements"));
                }
                let m = line.keyed(1, "m")?;
                let n = line.keyed(2, "n")?;
                line.finish(3)?;
                if m == 0 || n == 0 {
                    return Err(line.semantic(head.column, "need at least one mode and one qubit per mode"));
                }
                header = Some((m, n));
            }
            "qubit" => {
                if dv.is_some() {
                    return Err(line.semantic(head.column, "`qubit` declared twice"));
                }
                if !statements.is_empty() {
                    return Err(line.semantic(head.column, "declarations must precede statements"));
                }
                dv = Some(line.keyed(1, "a")?);
                line.finish(2)?;
            }
            "seed" => {
                let t = line.arg(1, "integer")?;
                seed = Some(t.text.parse().map_err(|_| line.syntax(t.column, format!("`{}` is not a seed", t.text), &["integer"]))?);
                line.finish(2)?;
            }
            "prep" => {
                let (modes, _) = need_modes(&line)?;
                let kind = line.arg(1, "fock")?;
                if kind.text != "fock" {
                    return Err(line.syntax(kind.column, format!("unknown preparation `{}`", kind.text), &["fock"]));
                }
                let (mode, col) = line.register(2, 'm', true, "mode")?;
                check_mode(&line, mode, col, modes)?;
                let k = line.uint(3, "photon number")?;
                line.finish(4)?;
                if gates_seen {
                    return Err(line.semantic(head.column, "`prep` must precede gates and measurements"));
                }
                statements.push(Statement::Prep { mode, prep: Prep::Fock(k) });
            }
            "MEAS" => {
                let (modes, _) = need_modes(&line)?;
                let kind = line.arg(1, "measurement kind")?;
                let (mode, col) = line.register(2, 'm', true, "mode")?;
                check_mode(&line, mode, col, modes)?;
                let m = match kind.text {
                    "homodyne" => {
                        let b = line.arg(3, "q or p")?;
                        let basis = match b.text {
                            "q" => Basis::Position,
                            "p" => Basis::Momentum,
                            other => return Err(line.syntax(b.column, format!("unknown quadrature `{other}`"), &["q", "p"])),
                        };
                        line.finish(4)?;
                        Measurement::Homodyne { mode, basis }
                    }
                    "heterodyne" => {
                        line.finish(3)?;
                        Measurement::Heterodyne { mode }
                    }
                    "photon" => {
                        let cutoff = line.keyed(3, "gamma")?;
                        if cutoff == 0 {
                            return Err(line.semantic(line.tokens[3].column, "gamma must be at least 1"));
                        }
                        let ancilla = match line.tokens.get(4) {
                            Some(t) => {
                                let value = t.text.strip_prefix("ancilla=").ok_or_else(|| {
                                    line.syntax(t.column, format!("unexpected `{}`", t.text), &["ancilla=q<index>", "end of line"])
                                })?;
                                let q = value
                                    .strip_prefix('q')
                                    .and_then(|d| d.parse().ok())
                                    .ok_or_else(|| line.syntax(t.column + 8, format!("`{value}` is not a qubit"), &["q<index>"]))?;
                                line.finish(5)?;
                                Some((q, t.column))
                            }
                            None => None,
                        };
                        let (ancilla, col) = ancilla.unwrap_or((0, head.column));
                        if ancilla >= dv.unwrap_or(0) {
                            return Err(line.semantic(col, "photon counting needs a declared ancilla qubit"));
                        }
                        Measurement::Photon { mode, cutoff, ancilla }
                    }
                    other => {
                        return Err(line.syntax(
                            kind.column,
                            format!("unknown measurement `{other}`"),
                            &["homodyne", "heterodyne", "photon"],
                        ))
                    }
                };
                gates_seen = true;
                statements.push(Statement::Measure(m));
            }
            name => {
                let gate = parse_gate(&line, name, head.column, header, dv.unwrap_or(0))?;
                gates_seen = true;
                statements.push(Statement::Gate(gate));
            }
        }
    }
    let (modes, n) = header.ok_or_else(|| Diagnostic {
        kind: DiagnosticKind::Semantic,
        line: text.lines().count().max(1),
        column: 1,
        message: "missing `mode` declaration".into(),
        expected: vec!["mode m=<modes> n=<qubits>".into()],
    })?;
    let dv = dv.unwrap_or(0);
    if let Err(e) = RegisterLayout::new(modes, n, dv) {
        let line = text.lines().position(|l| l.trim_start().starts_with("mode")).map_or(1, |p| p + 1);
        return Err(Diagnostic { kind: DiagnosticKind::Semantic, line, column: 1, message: e.to_string(), expected: vec![] });
    }
    Ok(Program { modes, n, dv, seed, statements })
}

fn check_mode(line: &Line, mode: usize, column: usize, modes: usize) -> std::result::Result<(), Diagnostic> {
    if mode >= modes {
        return Err(line.semantic(column, format!("mode {mode} is not declared ({modes} modes)")));
    }
    Ok(())
}

fn parse_gate(
    line: &Line,
    name: &str,
    column: usize,
    header: Option<(usize, usize)>,
    dv: usize,
) -> std::result::Result<HybridGate, Diagnostic> {
    let arity = match name {
        "D" | "R" | "S" => 1,
        "BS" => 2,
        "CD" | "CR" | "CS" => 1,
        "CBS" => 2,
        other => return Err(line.syntax(column, format!("unknown statement `{other}`"), STATEMENTS)),
    };
    let (modes, _) = header.ok_or_else(|| line.semantic(column, "registers used before the `mode` declaration"))?;
    let conditional = name.starts_with('C');
    let mut pos = 1;
    let control = if conditional {
        let (q, col) = line.register(1, 'q', false, "q<index>")?;
        if q >= dv {
            return Err(line.semantic(col, format!("qubit q{q} is not declared ({dv} qubits)")));
        }
        pos = 2;
        q
    } else {
        0
    };
    let mut ms = Vec::new();
    for i in 0..arity {
        let (m, col) = line.register(pos + i, 'm', true, "mode")?;
        check_mode(line, m, col, modes)?;
        ms.push((m, col));
    }
    let p = pos + arity;
    if arity == 2 && ms[0].0 == ms[1].0 {
        return Err(line.semantic(ms[1].1, format!("{name} needs two distinct modes")));
    }
    let mode = ms[0].0;
    let gate = match name {
        "D" => HybridGate::D { mode, alpha: line.complex(p)? },
        "R" => HybridGate::R { mode, theta: line.real(p)? },
        "S" => HybridGate::S { mode, r: line.real(p)? },
        "BS" => HybridGate::BS { a: mode, b: ms[1].0, theta: line.real(p)? },
        "CD" => HybridGate::CD { control, mode, alpha: line.complex(p)? },
        "CR" => HybridGate::CR { control, mode, theta: line.real(p)? },
        "CS" => HybridGate::CS { control, mode, r: line.real(p)? },
        _ => HybridGate::CBS { control, a: mode, b: ms[1].0, theta: line.real(p)? },
    };
    line.finish(p + 1)?;
    Ok(gate)
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode m={} n={}", self.modes, self.n)?;
        if self.dv > 0 {
            writeln!(f, "qubit a={}", self.dv)?;
        }
        if let Some(s) = self.seed {
            writeln!(f, "seed {s}")?;
        }
        for st in &self.statements {
            match st {
                Statement::Prep { mode, prep: Prep::Fock(k) } => writeln!(f, "prep fock {mode} {k}")?,
                Statement::Gate(g) => match *g {
                    HybridGate::D { mode, alpha } => writeln!(f, "D {mode} {}", format_complex(alpha))?,
                    HybridGate::R { mode, theta } => writeln!(f, "R {mode} {theta}")?,
                    HybridGate::S { mode, r } => writeln!(f, "S {mode} {r}")?,
                    HybridGate::BS { a, b, theta } => writeln!(f, "BS {a} {b} {theta}")?,
                    HybridGate::CD { control, mode, alpha } => {
                        writeln!(f, "CD q{control} m{mode} {}", format_complex(alpha))?
                    }
                    HybridGate::CR { control, mode, theta } => writeln!(f, "CR q{control} m{mode} {theta}")?,
                    HybridGate::CS { control, mode, r } => writeln!(f, "CS q{control} m{mode} {r}")?,
                    HybridGate::CBS { control, a, b, theta } => writeln!(f, "CBS q{control} m{a} m{b} {theta}")?,
                    ref other => writeln!(f, "# {} has no source form", other.name())?,
                },
                Statement::Measure(m) => match *m {
                    Measurement::Homodyne { mode, basis } => {
                        let b = if basis == Basis::Position { "q" } else { "p" };
                        writeln!(f, "MEAS homodyne {mode} {b}")?
                    }
                    Measurement::Heterodyne { mode } => writeln!(f, "MEAS heterodyne {mode}")?,
                    Measurement::Photon { mode, cutoff, ancilla } => {
                        writeln!(f, "MEAS photon {mode} gamma={cutoff} ancilla=q{ancilla}")?
                    }
                },
            }
        }
        Ok(())
    }
}

impl Program {
    pub fn layout(&self) -> Result<RegisterLayout> {
        RegisterLayout::new(self.modes, self.n, self.dv)
    }

    pub fn gates(&self) -> impl Iterator<Item = &HybridGate> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Gate(g) => Some(g),
            _ => None,
        })
    }

    /// Encoded product of the prepared Fock states (vacuum elsewhere),
    /// renormalized, with every bare qubit in `|0⟩`.
    pub fn initial_state(&self) -> Result<StateVector> {
        let layout = self.layout()?;
        let grid = layout.grid();
        let mut levels = vec![0usize; self.modes];
        for st in &self.statements {
            if let Statement::Prep { mode, prep: Prep::Fock(k) } = *st {
                levels[mode] = k;
            }
        }
        let vectors: Vec<Vec<Complex64>> = levels.iter().map(|&k| encode_fock(k, Basis::Position, &grid)).collect();
        let mut s = StateVector::product(layout, &vectors, &vec![false; self.dv])?;
        s.normalize()?;
        Ok(s)
    }

    /// Run the program `shots` times from one seeded stream and collect the
    /// measurement records. Returns the final state of the last shot.
    pub fn execute(&self, seed: u64, shots: usize, opts: &CompileOptions) -> Result<(Vec<MeasurementRecord>, StateVector)> {
        let layout = self.layout()?;
        let initial = self.initial_state()?;
        let mut circuits = Vec::with_capacity(self.statements.len());
        for st in &self.statements {
            circuits.push(match st {
                Statement::Gate(g) => Some(compile(g, &layout, opts)?),
                _ => None,
            });
        }
        let mut rng = seeded_rng(seed);
        let mut records = Vec::new();
        let mut state = initial.clone();
        for shot in 0..shots {
            state = initial.clone();
            for (st, circuit) in self.statements.iter().zip(&circuits) {
                match st {
                    Statement::Prep { .. } => {}
                    Statement::Gate(_) => state.apply_circuit(circuit.as_ref().expect("compiled"))?,
                    Statement::Measure(m) => {
                        let (protocol, outcome) = match *m {
                            Measurement::Homodyne { mode, basis } => {
                                ("homodyne", to_value(homodyne(&mut state, mode, basis, &mut rng)?)?)
                            }
                            Measurement::Heterodyne { mode } => {
                                let a = heterodyne(&mut state, mode, &mut rng)?;
                                ("heterodyne", serde_json::json!({ "re": a.re, "im": a.im }))
                            }
                            Measurement::Photon { mode, cutoff, ancilla } => {
                                ("photon", to_value(photon_count(&mut state, mode, cutoff, ancilla, &mut rng)?)?)
                            }
                        };
                        records.push(MeasurementRecord { protocol: protocol.into(), outcome, shot });
                    }
                }
            }
        }
        Ok((records, state))
    }
}

fn to_value<T: Serialize>(v: T) -> Result<serde_json::Value> {
    serde_json::to_value(v).map_err(|e| Error::Parse(e.to_string()))
}

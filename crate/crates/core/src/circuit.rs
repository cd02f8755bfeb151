// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Elementary gate alphabet, compiled circuits and resource counts.
//!
//! Angle conventions: `Rz(θ) = e^{−iθZ/2}`, `CzRot(θ) = e^{−i(θ/2) Z⊗Z}`.
//! `DiagPhase { qubits, slope }` multiplies the basis state whose little-endian
//! value on `qubits` is `j` by `e^{i·slope·j}`.

use std::f64::consts::PI;
use std::fmt::{self, Write as _};
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ElementaryGate {
    H { qubit: usize },
    X { qubit: usize },
    Rz { qubit: usize, angle: f64 },
    Cnot { control: usize, target: usize },
    Swap { a: usize, b: usize },
    CzRot { a: usize, b: usize, angle: f64 },
    DiagPhase { qubits: Vec<usize>, slope: f64 },
    Mz { qubit: usize },
}

impl ElementaryGate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Self::H { qubit } | Self::X { qubit } | Self::Rz { qubit, .. } | Self::Mz { qubit } => vec![*qubit],
            Self::Cnot { control, target } => vec![*control, *target],
            Self::Swap { a, b } | Self::CzRot { a, b, .. } => vec![*a, *b],
            Self::DiagPhase { qubits, .. } => qubits.clone(),
        }
    }

    pub fn angle(&self) -> Option<f64> {
        match self {
            Self::Rz { angle, .. } | Self::CzRot { angle, .. } => Some(*angle),
            Self::DiagPhase { slope, .. } => Some(*slope),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::H { .. } => "h",
            Self::X { .. } => "x",
            Self::Rz { .. } => "rz",
            Self::Cnot { .. } => "cnot",
            Self::Swap { .. } => "swap",
            Self::CzRot { .. } => "czrot",
            Self::DiagPhase { .. } => "diagphase",
            Self::Mz { .. } => "mz",
        }
    }

    /// Check operands against a register of `total` qubits.
    pub fn validate(&self, total: usize) -> Result<()> {
        let qs = self.qubits();
        for (i, &q) in qs.iter().enumerate() {
            if q >= total {
                return Err(Error::QubitOutOfRange { qubit: q, total });
            }
            if qs[..i].contains(&q) {
                return Err(Error::DuplicateOperand(q));
            }
        }
        if let Some(a) = self.angle() {
            if !a.is_finite() {
                return Err(Error::NonFinite(format!("{} angle", self.name())));
            }
        }
        Ok(())
    }

    /// The same gate with every qubit index passed through `f`.
    pub fn remap(&self, f: impl Fn(usize) -> usize) -> Self {
        match self {
            Self::H { qubit } => Self::H { qubit: f(*qubit) },
            Self::X { qubit } => Self::X { qubit: f(*qubit) },
            Self::Mz { qubit } => Self::Mz { qubit: f(*qubit) },
            Self::Rz { qubit, angle } => Self::Rz { qubit: f(*qubit), angle: *angle },
            Self::Cnot { control, target } => Self::Cnot { control: f(*control), target: f(*target) },
            Self::Swap { a, b } => Self::Swap { a: f(*a), b: f(*b) },
            Self::CzRot { a, b, angle } => Self::CzRot { a: f(*a), b: f(*b), angle: *angle },
            Self::DiagPhase { qubits, slope } => Self::DiagPhase {
                qubits: qubits.iter().map(|&q| f(q)).collect(),
                slope: *slope,
            },
        }
    }

    /// Inverse gate. `Mz` has none and is returned unchanged.
    pub fn inverse(&self) -> Self {
        match self {
            Self::Rz { qubit, angle } => Self::Rz { qubit: *qubit, angle: -angle },
            Self::CzRot { a, b, angle } => Self::CzRot { a: *a, b: *b, angle: -angle },
            Self::DiagPhase { qubits, slope } => Self::DiagPhase { qubits: qubits.clone(), slope: -slope },
            g => g.clone(),
        }
    }
}

impl fmt::Display for ElementaryGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for q in self.qubits() {
            write!(f, " {q}")?;
        }
        if let Some(a) = self.angle() {
            write!(f, " {a:.17e}")?;
        }
        Ok(())
    }
}

/// One step of a compiled circuit: an elementary gate or a whole shifted QFT.
#[derive(Clone, Debug, PartialEq)]
pub enum Op {
    Gate(ElementaryGate),
    Qft { qubits: Vec<usize>, inverse: bool },
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CompiledCircuit {
    pub ops: Vec<Op>,
    /// Phase `φ` of the overall factor `e^{iφ}`.
    pub global_phase: f64,
}

/// Gate totals. `qft` counts whole shifted-QFT units; the other fields count
/// gates emitted outside of them.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub qft: usize,
    pub h: usize,
    pub rz: usize,
    pub cnot: usize,
    pub cz: usize,
    pub x: usize,
    pub swap: usize,
    pub mz: usize,
}

impl Add for GateCounts {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            qft: self.qft + o.qft,
            h: self.h + o.h,
            rz: self.rz + o.rz,
            cnot: self.cnot + o.cnot,
            cz: self.cz + o.cz,
            x: self.x + o.x,
            swap: self.swap + o.swap,
            mz: self.mz + o.mz,
        }
    }
}

impl AddAssign for GateCounts {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

/// Counts in the basis {H, Rz, CNOT, X, SWAP, Mz}.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandedCounts {
    pub h: usize,
    pub rz: usize,
    pub cnot: usize,
    pub x: usize,
    pub swap: usize,
    pub mz: usize,
}

impl GateCounts {
    /// Expand QFT units as `n H + n(n−1)/2 Rz + n(n−1) CNOT` and each
    /// `C_z` as `1 Rz + 2 CNOT`. With `swap_as_cnot`, each SWAP becomes 3 CNOT.
    pub fn expanded(&self, n: usize, swap_as_cnot: bool) -> ExpandedCounts {
        let (qh, qrz, qcnot) = qft_unit_cost(n);
        let mut e = ExpandedCounts {
            h: self.h + self.qft * qh,
            rz: self.rz + self.cz + self.qft * qrz,
            cnot: self.cnot + 2 * self.cz + self.qft * qcnot,
            x: self.x,
            swap: self.swap,
            mz: self.mz,
        };
        if swap_as_cnot {
            e.cnot += 3 * e.swap;
            e.swap = 0;
        }
        e
    }
}

/// `(H, Rz, CNOT)` cost of one `n`-qubit QFT unit.
pub fn qft_unit_cost(n: usize) -> (usize, usize, usize) {
    (n, n * n.saturating_sub(1) / 2, n * n.saturating_sub(1))
}

impl CompiledCircuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, gate: ElementaryGate) {
        self.ops.push(Op::Gate(gate));
    }

    pub fn push_qft(&mut self, qubits: Vec<usize>, inverse: bool) {
        self.ops.push(Op::Qft { qubits, inverse });
    }

    /// Append another circuit (applied after this one).
    pub fn extend(&mut self, other: CompiledCircuit) {
        self.ops.extend(other.ops);
        self.global_phase += other.global_phase;
    }

    pub fn counts(&self) -> GateCounts {
        let mut c = GateCounts::default();
        for op in &self.ops {
            match op {
                Op::Qft { .. } => c.qft += 1,
                Op::Gate(g) => match g {
                    ElementaryGate::H { .. } => c.h += 1,
                    ElementaryGate::X { .. } => c.x += 1,
                    ElementaryGate::Rz { .. } => c.rz += 1,
                    ElementaryGate::Cnot { .. } => c.cnot += 1,
                    ElementaryGate::Swap { .. } => c.swap += 1,
                    ElementaryGate::CzRot { .. } => c.cz += 1,
                    ElementaryGate::Mz { .. } => c.mz += 1,
                    ElementaryGate::DiagPhase { .. } => {}
                },
            }
        }
        c
    }

    /// Inverse circuit (ops reversed and inverted, phase negated).
    pub fn inverse(&self) -> Self {
        let ops = self
            .ops
            .iter()
            .rev()
            .map(|op| match op {
                Op::Gate(g) => Op::Gate(g.inverse()),
                Op::Qft { qubits, inverse } => Op::Qft { qubits: qubits.clone(), inverse: !inverse },
            })
            .collect();
        Self { ops, global_phase: -self.global_phase }
    }

    /// Replace every QFT unit by its elementary gates.
    pub fn expand(&self) -> Self {
        let mut out = Self { ops: Vec::new(), global_phase: self.global_phase };
        for op in &self.ops {
            match op {
                Op::Gate(g) => out.push(g.clone()),
                Op::Qft { qubits, inverse } => {
                    let q = qft_circuit(qubits, *inverse);
                    out.ops.extend(q.ops);
                    out.global_phase += q.global_phase;
                }
            }
        }
        out
    }

    /// Elementary gates with QFTs expanded, as a JSON array of
    /// `{kind, qubits, angle}` objects. The global phase is not included.
    pub fn to_json(&self) -> serde_json::Value {
        let gates: Vec<serde_json::Value> = self
            .expand()
            .ops
            .iter()
            .map(|op| match op {
                Op::Gate(g) => serde_json::json!({
                    "kind": g.name(),
                    "qubits": g.qubits(),
                    "angle": g.angle(),
                }),
                Op::Qft { .. } => unreachable!("expanded"),
            })
            .collect();
        serde_json::json!({ "global_phase": self.global_phase, "gates": gates })
    }

    /// One line per gate; QFT units are kept as `qft` / `iqft` lines unless
    /// `expand` is set.
    pub fn to_text(&self, expand: bool) -> String {
        let circuit = if expand { self.expand() } else { self.clone() };
        let mut s = String::new();
        for op in &circuit.ops {
            match op {
                Op::Gate(g) => writeln!(s, "{g}").unwrap(),
                Op::Qft { qubits, inverse } => {
                    s.push_str(if *inverse { "iqft" } else { "qft" });
                    for q in qubits {
                        write!(s, " {q}").unwrap();
                    }
                    s.push('\n');
                }
            }
        }
        writeln!(s, "phase {:.17e}", circuit.global_phase).unwrap();
        s
    }
}

/// Elementary realization of the shifted QFT on `qubits` (little-endian).
///
/// `F̃ = e^{−i2πc²/N} · D · DFT⁻ · D` with `c = (N−1)/2`, `D = diag(e^{i2πcj/N})`
/// and `DFT⁻[k, j] = e^{−2πijk/N}/√N`; the adjoint follows by inversion.
pub fn qft_circuit(qubits: &[usize], inverse: bool) -> CompiledCircuit {
    let n = qubits.len();
    let dim = (1u64 << n) as f64;
    let c = (dim - 1.0) / 2.0;
    let slope = 2.0 * PI * c / dim;
    let mut out = CompiledCircuit::new();
    out.push(ElementaryGate::DiagPhase { qubits: qubits.to_vec(), slope });
    out.extend(dft_circuit(qubits, -1.0));
    out.push(ElementaryGate::DiagPhase { qubits: qubits.to_vec(), slope });
    out.global_phase += -2.0 * PI * c * c / dim;
    if inverse {
        out.inverse()
    } else {
        out
    }
}

/// `DFT[k, j] = e^{sign·2πijk/N}/√N` from H, controlled phases and a final
/// bit-reversal by SWAPs.
fn dft_circuit(qubits: &[usize], sign: f64) -> CompiledCircuit {
    let n = qubits.len();
    let mut out = CompiledCircuit::new();
    for t in (0..n).rev() {
        out.push(ElementaryGate::H { qubit: qubits[t] });
        for l in (0..t).rev() {
            let phi = sign * PI / (1u64 << (t - l)) as f64;
            out.extend(controlled_phase(qubits[l], qubits[t], phi));
        }
    }
    for i in 0..n / 2 {
        out.push(ElementaryGate::Swap { a: qubits[i], b: qubits[n - 1 - i] });
    }
    out
}

/// `diag(1, 1, 1, e^{iφ})` as two `Rz`, one `CzRot` and a global phase.
pub fn controlled_phase(a: usize, b: usize, phi: f64) -> CompiledCircuit {
    let mut out = CompiledCircuit::new();
    out.push(ElementaryGate::Rz { qubit: a, angle: phi / 2.0 });
    out.push(ElementaryGate::Rz { qubit: b, angle: phi / 2.0 });
    out.push(ElementaryGate::CzRot { a, b, angle: -phi / 2.0 });
    out.global_phase += phi / 4.0;
    out
}

// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Gate emitters for position-diagonal layers.
//!
//! On a register the position operator is `Q = λ j̃ = −λ Σ_r 2^{r−1} Z_r`.
//! Every exponential of a polynomial of degree ≤ 2 in `Q` therefore factors
//! exactly into single-qubit `Rz` and two-qubit `CzRot` gates.

use std::f64::consts::PI;

use crate::circuit::{CompiledCircuit, ElementaryGate};

fn pow2(e: usize) -> f64 {
    (1u64 << e) as f64
}

/// Constant term `λ²(4^n − 1)/12` of `Q²`.
pub fn qsq_constant(n: usize, lambda: f64) -> f64 {
    lambda * lambda * (4f64.powi(n as i32) - 1.0) / 12.0
}

/// `e^{itQ}`: `n` Rz gates.
pub fn phase_q(qubits: &[usize], lambda: f64, t: f64) -> CompiledCircuit {
    let mut c = CompiledCircuit::new();
    if t == 0.0 {
        return c;
    }
    for (r, &q) in qubits.iter().enumerate() {
        c.push(ElementaryGate::Rz { qubit: q, angle: t * lambda * pow2(r) });
    }
    c
}

/// `e^{itQ²}`: `n(n−1)/2` CzRot gates plus a global phase.
pub fn phase_qsq(qubits: &[usize], lambda: f64, t: f64) -> CompiledCircuit {
    let mut c = CompiledCircuit::new();
    if t == 0.0 {
        return c;
    }
    let lam2 = lambda * lambda;
    for r in 0..qubits.len() {
        for s in r + 1..qubits.len() {
            c.push(ElementaryGate::CzRot { a: qubits[r], b: qubits[s], angle: -t * lam2 * pow2(r + s) });
        }
    }
    c.global_phase = t * qsq_constant(qubits.len(), lambda);
    c
}

/// `e^{itQ_a Q_b}` for distinct registers: `n²` CzRot gates.
pub fn phase_qq(qa: &[usize], qb: &[usize], lambda: f64, t: f64) -> CompiledCircuit {
    let mut c = CompiledCircuit::new();
    if t == 0.0 {
        return c;
    }
    let lam2 = lambda * lambda;
    for (r, &a) in qa.iter().enumerate() {
        for (s, &b) in qb.iter().enumerate() {
            c.push(ElementaryGate::CzRot { a, b, angle: -t * lam2 * pow2(r + s) / 2.0 });
        }
    }
    c
}

/// `e^{itZ_c Q}`: `n` CzRot gates between the control and each bit.
pub fn cond_phase_q(control: usize, qubits: &[usize], lambda: f64, t: f64) -> CompiledCircuit {
    let mut c = CompiledCircuit::new();
    if t == 0.0 {
        return c;
    }
    for (r, &q) in qubits.iter().enumerate() {
        c.push(ElementaryGate::CzRot { a: control, b: q, angle: t * lambda * pow2(r) });
    }
    c
}

/// `e^{itZ_c Q²}` without its constant part: for each bit `r`, a CNOT pair
/// from the control around the CzRot gates `(r, s > r)`. The constant part is
/// `e^{it·qsq_constant·Z_c}` and is returned as the angle of the `Rz` on the
/// control that completes the layer.
pub fn cond_phase_qsq_body(control: usize, qubits: &[usize], lambda: f64, t: f64) -> (CompiledCircuit, f64) {
    let mut c = CompiledCircuit::new();
    if t == 0.0 {
        return (c, 0.0);
    }
    let lam2 = lambda * lambda;
    for r in 0..qubits.len() {
        c.push(ElementaryGate::Cnot { control, target: qubits[r] });
        for s in r + 1..qubits.len() {
            c.push(ElementaryGate::CzRot { a: qubits[r], b: qubits[s], angle: -t * lam2 * pow2(r + s) });
        }
        c.push(ElementaryGate::Cnot { control, target: qubits[r] });
    }
    (c, -2.0 * t * qsq_constant(qubits.len(), lambda))
}

/// `e^{itZ_c Q²}` including its control rotation.
pub fn cond_phase_qsq(control: usize, qubits: &[usize], lambda: f64, t: f64) -> CompiledCircuit {
    let (mut c, rz) = cond_phase_qsq_body(control, qubits, lambda, t);
    if rz != 0.0 {
        c.push(ElementaryGate::Rz { qubit: control, angle: rz });
    }
    c
}

/// `e^{itZ_c Q_a Q_b}`: per bit of `a`, a CNOT pair around `n` CzRot gates.
pub fn cond_phase_qq(control: usize, qa: &[usize], qb: &[usize], lambda: f64, t: f64) -> CompiledCircuit {
    let mut c = CompiledCircuit::new();
    if t == 0.0 {
        return c;
    }
    let lam2 = lambda * lambda;
    for (r, &a) in qa.iter().enumerate() {
        c.push(ElementaryGate::Cnot { control, target: a });
        for (s, &b) in qb.iter().enumerate() {
            c.push(ElementaryGate::CzRot { a, b, angle: -t * lam2 * pow2(r + s) / 2.0 });
        }
        c.push(ElementaryGate::Cnot { control, target: a });
    }
    c
}

/// Grid reversal `j → N−1−j`: X on every bit, or CNOT from `control`.
pub fn parity(qubits: &[usize], control: Option<usize>) -> CompiledCircuit {
    let mut c = CompiledCircuit::new();
    for &q in qubits {
        c.push(match control {
            None => ElementaryGate::X { qubit: q },
            Some(ctl) => ElementaryGate::Cnot { control: ctl, target: q },
        });
    }
    c
}

/// Exchange two registers bit by bit.
pub fn swap_registers(qa: &[usize], qb: &[usize]) -> CompiledCircuit {
    let mut c = CompiledCircuit::new();
    for (&a, &b) in qa.iter().zip(qb) {
        c.push(ElementaryGate::Swap { a, b });
    }
    c
}

/// Wrap an angle to `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y - 2.0 * PI
    } else {
        y
    }
}

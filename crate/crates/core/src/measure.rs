// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Homodyne, heterodyne and photon-number measurements.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::circuit::ElementaryGate;
use crate::compiler::{compile, CompileOptions, HybridGate};
use crate::engine::{QftRoute, StateVector};
use crate::error::{Error, Result};
use crate::grid::{encode_fock, Basis};
use crate::{Complex64, Rng};

/// Result of a quadrature measurement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomodyneOutcome {
    pub x: f64,
    pub bits: Vec<bool>,
}

impl HomodyneOutcome {
    pub fn from_bits(bits: Vec<bool>, lambda: f64) -> Self {
        let n = bits.len();
        let j = bits.iter().enumerate().fold(0usize, |acc, (r, &b)| acc | usize::from(b) << r);
        let x = lambda * (j as f64 - ((1usize << n) - 1) as f64 / 2.0);
        Self { x, bits }
    }
}

/// Result of photon counting with `bits` rounds of phase estimation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhotonCount {
    pub k: usize,
    pub bits: usize,
}

/// Number of phase bits needed to resolve photon numbers up to `cutoff`.
pub fn phase_bits(cutoff: usize) -> usize {
    (usize::BITS - cutoff.leading_zeros()) as usize
}

/// Measure `mode` in the position or momentum quadrature.
pub fn homodyne(state: &mut StateVector, mode: usize, basis: Basis, rng: &mut Rng) -> Result<HomodyneOutcome> {
    let qubits = state.layout().mode_qubits(mode)?;
    if state.norm() == 0.0 {
        return Err(Error::ZeroNorm);
    }
    if basis == Basis::Momentum {
        state.apply_qft(mode, false, QftRoute::Circuit)?;
    }
    let bits = state.measure_z(&qubits, rng)?;
    Ok(HomodyneOutcome::from_bits(bits, state.layout().grid().lambda()))
}

/// Heterodyne `mode` by mixing it with a fresh vacuum mode on a balanced beam
/// splitter and reading both position registers. Both registers are consumed:
/// the ancilla is removed and `mode` is left in its measured grid state.
pub fn heterodyne(state: &mut StateVector, mode: usize, rng: &mut Rng) -> Result<Complex64> {
    state.layout().check_mode(mode)?;
    if state.norm() == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let grid = state.layout().grid();
    state.append_mode(&encode_fock(0, Basis::Position, &grid))?;
    let ancilla = state.layout().modes() - 1;
    let bs = HybridGate::BS { a: mode, b: ancilla, theta: FRAC_PI_2 };
    state.apply_circuit(&compile(&bs, state.layout(), &CompileOptions::default())?)?;
    let x1 = homodyne(state, mode, Basis::Position, rng)?;
    let x2 = homodyne(state, ancilla, Basis::Position, rng)?;
    let value = x2.bits.iter().enumerate().fold(0usize, |acc, (r, &b)| acc | usize::from(b) << r);
    state.remove_mode(ancilla, value)?;
    Ok(Complex64::new(x1.x, x2.x))
}

/// Count photons in `mode` up to `cutoff` by iterative phase estimation on the
/// bare qubit `ancilla`, which is reset to `|0⟩` first and after every round.
pub fn photon_count(state: &mut StateVector, mode: usize, cutoff: usize, ancilla: usize, rng: &mut Rng) -> Result<PhotonCount> {
    state.layout().check_mode(mode)?;
    if state.layout().dv_qubits() <= ancilla {
        return Err(Error::NoAncilla);
    }
    if state.norm() == 0.0 {
        return Err(Error::ZeroNorm);
    }
    let q = state.layout().dv_qubit(ancilla)?;
    let gamma = phase_bits(cutoff);
    let modulus = (1usize << gamma) as f64;
    reset(state, q, rng)?;
    let mut bits = vec![false; gamma];
    for round in (0..gamma).rev() {
        let theta = PI * (1u64 << round) as f64 / modulus;
        let feedback: f64 =
            -PI * (round + 1..gamma).map(|l| f64::from(u8::from(bits[l])) / (1u64 << (l - round)) as f64).sum::<f64>();
        state.apply_elementary(&ElementaryGate::H { qubit: q })?;
        let cr = HybridGate::CR { control: ancilla, mode, theta };
        state.apply_circuit(&compile(&cr, state.layout(), &CompileOptions::default())?)?;
        state.apply_elementary(&ElementaryGate::Rz { qubit: q, angle: feedback - theta })?;
        state.apply_elementary(&ElementaryGate::H { qubit: q })?;
        bits[round] = state.measure_z(&[q], rng)?[0];
        if bits[round] {
            state.apply_elementary(&ElementaryGate::X { qubit: q })?;
        }
    }
    let k = bits.iter().enumerate().fold(0usize, |acc, (r, &b)| acc | usize::from(b) << (gamma - 1 - r));
    Ok(PhotonCount { k, bits: gamma })
}

fn reset(state: &mut StateVector, qubit: usize, rng: &mut Rng) -> Result<()> {
    if state.measure_z(&[qubit], rng)?[0] {
        state.apply_elementary(&ElementaryGate::X { qubit })?;
    }
    Ok(())
}

/// One measurement record, serialized as a JSON line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub protocol: String,
    pub outcome: serde_json::Value,
    pub shot: usize,
}

// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! QFT and gate discretization errors, the per-Fock error fit and resource
//! formulas.

pub mod csv;
pub mod fit;
pub mod resources;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::compiler::{compile, compiled_layers, CompileOptions, HybridGate, Layer};
use crate::engine::{RegisterLayout, StateVector};
use crate::error::{Error, Result};
use crate::grid::{apply_dense, encode, shifted_qft_matrix, GridSpec, Wavefunction};
use crate::hermite::hermite_table;
use crate::oracle::{reference_wavefunction, FockCoeffs, FockOracle, DEFAULT_CUTOFF, DEFAULT_TWO_MODE_CUTOFF};
use crate::Complex64;

pub use self::fit::{fit_per_fock, fit_points, line_fit, ErrorFit, SweepPoint, FIT_WINDOW, REFERENCE_META};
pub use self::resources::{
    advantage_boundary, advantage_rows, mixture_bound, fock_encoding_cost, gamma_cutoff, model_coefficients,
    qubits_for, AdvantageRow, FockEncodingCost,
};

/// Errors below this are floating-point noise.
pub const FP_FLOOR: f64 = 1e-12;

/// Euclidean distance between two amplitude vectors.
pub fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// `‖Enc_P ψ − F̃ Enc_Q ψ‖` from the position and momentum wavefunctions of
/// the same state.
pub fn qft_error(position: &Wavefunction, momentum: &Wavefunction, grid: &GridSpec) -> Result<f64> {
    let q = encode(position, grid)?;
    let p = encode(momentum, grid)?;
    Ok(distance(&p, &apply_dense(&shifted_qft_matrix(grid), &q, false)))
}

/// QFT error of `Σ c_k |k⟩` for leading Fock coefficients `c`.
pub fn qft_error_coeffs(coeffs: &[Complex64], grid: &GridSpec) -> f64 {
    if coeffs.is_empty() {
        return 0.0;
    }
    let table = hermite_table(coeffs.len() - 1, &grid.points());
    let sl = grid.lambda().sqrt();
    let mut q = vec![Complex64::new(0.0, 0.0); grid.dim()];
    let mut p = q.clone();
    for (k, c) in coeffs.iter().enumerate() {
        let phase = Complex64::new(0.0, -1.0).powu(k as u32);
        for j in 0..grid.dim() {
            q[j] += c * table[k][j] * sl;
            p[j] += c * phase * table[k][j] * sl;
        }
    }
    distance(&p, &apply_dense(&shifted_qft_matrix(grid), &q, false))
}

/// QFT errors of `|0⟩ … |kmax⟩` on one grid.
pub fn qft_error_fock(kmax: usize, grid: &GridSpec) -> Vec<f64> {
    let table = hermite_table(kmax, &grid.points());
    let sl = grid.lambda().sqrt();
    let q = DMatrix::from_fn(grid.dim(), kmax + 1, |j, k| Complex64::new(table[k][j] * sl, 0.0));
    let fq = shifted_qft_matrix(grid) * &q;
    (0..=kmax)
        .map(|k| {
            let phase = Complex64::new(0.0, -1.0).powu(k as u32);
            (0..grid.dim()).map(|j| (q[(j, k)] * phase - fq[(j, k)]).norm_sqr()).sum::<f64>().sqrt()
        })
        .collect()
}

/// `‖reference − circuit(input)‖` for `gate` compiled on `layout`; the
/// circuit's global phase is part of the comparison.
pub fn gate_error(
    gate: &HybridGate,
    input: &[Complex64],
    reference_output: &[Complex64],
    layout: &RegisterLayout,
    opts: &CompileOptions,
) -> Result<f64> {
    let mut state = StateVector::from_amplitudes(layout.clone(), input.to_vec())?;
    state.apply_circuit(&compile(gate, layout, opts)?)?;
    Ok(distance(state.amplitudes(), reference_output))
}

/// Measured error of one gate on one input with its a-priori bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateErrorReport {
    pub error: f64,
    /// Number of QFT layers in the compiled gate.
    pub k_qft: usize,
    /// Largest general-state bound over the states entering each QFT.
    pub eps_star: f64,
    /// `max(k_qft, 1) · max(eps_star, FP_FLOOR)`.
    pub bound: f64,
}

impl GateErrorReport {
    pub fn within_bound(&self) -> bool {
        self.error <= self.bound
    }
}

fn base_cutoff(modes: usize) -> Result<usize> {
    match modes {
        1 => Ok(DEFAULT_CUTOFF),
        2 => Ok(DEFAULT_TWO_MODE_CUTOFF),
        m => Err(Error::Layout(format!("error reports support one or two modes, not {m}"))),
    }
}

/// Run `f` with an oracle on the default cutoff, doubling it (up to four
/// times the default) whenever the dynamics reach the truncation edge.
fn with_oracle<T>(modes: usize, input: &FockCoeffs, f: impl Fn(&FockOracle, &FockCoeffs) -> Result<T>) -> Result<T> {
    let base = base_cutoff(modes)?;
    let mut cutoff = base;
    loop {
        let oracle = FockOracle::new(modes, cutoff);
        match f(&oracle, &input.resized(cutoff)?) {
            Err(Error::Truncation { .. }) if cutoff < 4 * base => cutoff *= 2,
            other => return other,
        }
    }
}

fn mode_count(gate: &HybridGate) -> usize {
    gate.modes().into_iter().max().map_or(1, |m| m + 1)
}

fn qft_bound(
    oracle: &FockOracle,
    layers: &[Layer],
    input: &FockCoeffs,
    branch: f64,
    coeffs: (f64, f64),
) -> Result<(usize, f64, FockCoeffs)> {
    let (before, out) = oracle.states_before_qft(layers, input, branch)?;
    let qft_modes: Vec<usize> = layers
        .iter()
        .filter_map(|l| match *l {
            Layer::Qft { mode, .. } => Some(mode),
            _ => None,
        })
        .collect();
    let eps = before
        .iter()
        .zip(&qft_modes)
        .map(|(s, &m)| mixture_bound(coeffs.0, coeffs.1, &s.photon_distribution(m)))
        .fold(0.0, f64::max);
    Ok((qft_modes.len(), eps, out))
}

fn report(error: f64, k_qft: usize, eps_star: f64) -> GateErrorReport {
    GateErrorReport { error, k_qft, eps_star, bound: k_qft.max(1) as f64 * eps_star.max(FP_FLOOR) }
}

/// Error of an unconditional gate on Fock-basis input `input`, referenced
/// against the oracle, with the bound from `coeffs = (a_n, b_n)`.
pub fn fock_gate_error(
    gate: &HybridGate,
    input: &FockCoeffs,
    n: usize,
    coeffs: (f64, f64),
    opts: &CompileOptions,
) -> Result<GateErrorReport> {
    let modes = mode_count(gate);
    let layout = RegisterLayout::new(modes, n, 0)?;
    let grid = layout.grid();
    let layers = compiled_layers(gate, opts);
    with_oracle(modes, input, |oracle, input| {
        let (k_qft, eps_star, _) = qft_bound(oracle, &layers, input, 1.0, coeffs)?;
        let reference = reference_wavefunction(&oracle.reference_apply(gate, input)?, &grid);
        let error = gate_error(gate, &reference_wavefunction(input, &grid), &reference, &layout, opts)?;
        Ok(report(error, k_qft, eps_star))
    })
}

/// Branch errors of a conditional gate whose control (bare qubit 0) starts in
/// `|+⟩`: the control is projected onto `|0⟩` and `|1⟩` and each branch is
/// compared with the unconditional `±parameter` oracle output.
pub fn conditional_branch_errors(
    gate: &HybridGate,
    input: &FockCoeffs,
    n: usize,
    coeffs: (f64, f64),
    opts: &CompileOptions,
) -> Result<[GateErrorReport; 2]> {
    if gate.control() != Some(0) {
        return Err(Error::InvalidOperands("branch errors need a gate controlled by qubit 0".into()));
    }
    let modes = mode_count(gate);
    let layout = RegisterLayout::new(modes, n, 1)?;
    let grid = layout.grid();
    let layers = compiled_layers(gate, opts);
    let q = layout.dv_qubit(0)?;
    let compiled = compile(gate, &layout, opts)?;
    with_oracle(modes, input, |oracle, input| {
        let w = reference_wavefunction(input, &grid);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let amps: Vec<Complex64> = w.iter().chain(&w).map(|a| a * s).collect();
        let mut state = StateVector::from_amplitudes(layout.clone(), amps)?;
        state.apply_circuit(&compiled)?;
        let mut out = Vec::with_capacity(2);
        for bit in [false, true] {
            let branch_gate = gate.branch(bit).expect("controlled gate");
            let reference = reference_wavefunction(&oracle.reference_apply(&branch_gate, input)?, &grid);
            let got: Vec<Complex64> = state.project(q, bit)?.into_iter().map(|a| a / s).collect();
            let (k_qft, eps_star, _) = qft_bound(oracle, &layers, input, if bit { -1.0 } else { 1.0 }, coeffs)?;
            out.push(report(distance(&got, &reference), k_qft, eps_star));
        }
        Ok([out[0].clone(), out[1].clone()])
    })
}

/// One point of a gate-error sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateErrorPoint {
    pub gate: String,
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
}

/// Gate errors on `|k⟩` (or `|k, 0⟩` for two-mode gates) for `k ≤ kmax`.
pub fn gate_error_sweep(gate: &HybridGate, ns: &[usize], kmax: usize, opts: &CompileOptions) -> Result<Vec<GateErrorPoint>> {
    let modes = mode_count(gate);
    let cutoff = base_cutoff(modes)?;
    let jobs: Vec<(usize, usize)> = ns.iter().flat_map(|&n| (0..=kmax).map(move |k| (n, k))).collect();
    jobs.into_par_iter()
        .map(|(n, k)| {
            let input = match modes {
                1 => FockCoeffs::fock(k, cutoff),
                _ => FockCoeffs::fock_multi(&[k, 0], cutoff),
            };
            let r = fock_gate_error(gate, &input, n, model_coefficients(n, &REFERENCE_META), opts)?;
            Ok(GateErrorPoint { gate: gate.name().to_string(), n, k, epsilon: r.error })
        })
        .collect()
}

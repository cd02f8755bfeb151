// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Browser bindings. The plain functions are usable natively; the
//! `#[wasm_bindgen]` wrappers hand results to JavaScript as typed arrays or
//! JSON strings.

use cvdv::errorlab::{self, AdvantageRow, REFERENCE_META};
use cvdv::grid::{encode_fock, Basis};
use cvdv::oracle::reference_wavefunction;
use cvdv::{compile, CompileOptions, Complex64, FockCoeffs, FockOracle, GridSpec, HybridGate, RegisterLayout, StateVector};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest register the page will simulate.
pub const MAX_QUBITS: usize = 12;

/// Output of one gate applied to `|k⟩`, as probability densities on the grid.
#[derive(Clone, Debug, Serialize)]
pub struct GateView {
    pub x: Vec<f64>,
    pub simulated: Vec<f64>,
    pub exact: Vec<f64>,
    pub error: f64,
}

/// Apply `D(re + i·im)`, `R(re)` or `S(re)` to the Fock state `|k⟩` on an
/// `n`-qubit register and compare with the truncated Fock-space reference.
pub fn gate_view(gate: &str, re: f64, im: f64, n: usize, k: usize) -> Result<GateView, String> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(format!("n must lie in 1..={MAX_QUBITS}"));
    }
    if !re.is_finite() || !im.is_finite() {
        return Err("parameters must be finite".into());
    }
    let g = match gate {
        "D" => HybridGate::D { mode: 0, alpha: Complex64::new(re, im) },
        "R" => HybridGate::R { mode: 0, theta: re },
        "S" => HybridGate::S { mode: 0, r: re },
        other => return Err(format!("unknown gate `{other}`")),
    };
    let layout = RegisterLayout::new(1, n, 0).map_err(|e| e.to_string())?;
    let grid = layout.grid();
    let mut state = StateVector::product(layout.clone(), &[encode_fock(k, Basis::Position, &grid)], &[]).map_err(|e| e.to_string())?;
    let circuit = compile(&g, &layout, &CompileOptions::default()).map_err(|e| e.to_string())?;
    state.apply_circuit(&circuit).map_err(|e| e.to_string())?;

    let oracle = FockOracle::single_mode();
    if k >= oracle.cutoff() {
        return Err(format!("k must be below {}", oracle.cutoff()));
    }
    let out = oracle.reference_apply(&g, &FockCoeffs::fock(k, oracle.cutoff())).map_err(|e| e.to_string())?;
    let exact = reference_wavefunction(&out, &grid);
    let error = errorlab::distance(state.amplitudes(), &exact);
    let density = |v: &[Complex64]| v.iter().map(|a| a.norm_sqr() / grid.lambda()).collect();
    Ok(GateView { x: grid.points(), simulated: density(state.amplitudes()), exact: density(&exact), error })
}

/// QFT error `ε_k` of the Fock states `k = 0..=kmax` on an `n`-qubit register.
pub fn qft_error_curve(n: usize, kmax: usize) -> Result<Vec<f64>, String> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(format!("n must lie in 1..={MAX_QUBITS}"));
    }
    let grid = GridSpec::new(n);
    if kmax >= 4 * grid.dim() {
        return Err(format!("kmax must be below {}", 4 * grid.dim()));
    }
    Ok(errorlab::qft_error_fock(kmax, &grid))
}

#[derive(Clone, Debug, Serialize)]
pub struct Estimate {
    pub qubits: usize,
    pub advantage: Vec<AdvantageRow>,
}

/// Qubits per mode for cutoff `gamma` at error `eps`, with the cutoff and
/// CNOT-ratio table for registers up to `nmax`.
pub fn estimate(gamma: usize, eps: f64, nmax: usize) -> Result<Estimate, String> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err("eps must lie in (0, 1)".into());
    }
    if nmax == 0 || nmax > 64 {
        return Err("nmax must lie in 1..=64".into());
    }
    Ok(Estimate { qubits: errorlab::qubits_for(gamma, eps), advantage: errorlab::advantage_rows(nmax, eps, &REFERENCE_META) })
}

#[wasm_bindgen(js_name = gateView)]
pub fn gate_view_js(gate: &str, re: f64, im: f64, n: usize, k: usize) -> Result<String, JsValue> {
    gate_view(gate, re, im, n, k).map(|v| serde_json::to_string(&v).expect("serializable")).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = qftErrorCurve)]
pub fn qft_error_curve_js(n: usize, kmax: usize) -> Result<Vec<f64>, JsValue> {
    qft_error_curve(n, kmax).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = estimate)]
pub fn estimate_js(gamma: usize, eps: f64, nmax: usize) -> Result<String, JsValue> {
    estimate(gamma, eps, nmax).map(|v| serde_json::to_string(&v).expect("serializable")).map_err(|e| JsValue::from_str(&e))
}

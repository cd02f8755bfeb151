// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Resource formulas.

use serde::{Deserialize, Serialize};

/// `(a_n, b_n)` from meta-coefficients.
pub fn model_coefficients(n: usize, meta: &[f64; 4]) -> (f64, f64) {
    let h = 2f64.powf(n as f64 / 2.0);
    (meta[0] / h + meta[1], meta[2] * h + meta[3])
}

/// `√(Σ p_k e^{2ak + 2b})`.
pub fn mixture_bound(a: f64, b: f64, probs: &[f64]) -> f64 {
    probs
        .iter()
        .enumerate()
        .filter(|(_, p)| **p > 0.0)
        .map(|(k, p)| p * (2.0 * a * k as f64 + 2.0 * b).exp())
        .sum::<f64>()
        .sqrt()
}

/// Smallest `n` with `n ≥ 2 log₂((C + √(C² + 97.60Γ)) / 11.5806)`,
/// `C = 0.1027Γ + 16.2724 + ln(1/ε)`.
pub fn qubits_for(gamma: usize, eps: f64) -> usize {
    let g = gamma as f64;
    let c = 0.1027 * g + 16.2724 - eps.ln();
    let x = (c + (c * c + 97.60 * g).sqrt()) / 11.5806;
    (2.0 * x.log2()).ceil().max(1.0) as usize
}

/// Gate cost of Fock-basis simulation of one displacement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FockEncodingCost {
    /// CNOTs per Trotter step.
    pub n_cnot: u64,
    /// Trotter steps.
    pub n_exp: f64,
}

/// `N_CNOT = (270n_NI + 126)n² + (144 + 228n_NI)n − 12n_NI − 22` and
/// `N_exp = ⌈3Nα(25/3)^k (2αN/ε)^{1/(2k)}⌉` with `N = 2^n`.
pub fn fock_encoding_cost(n: u64, n_ni: u64, alpha: f64, eps: f64, k_order: u32) -> FockEncodingCost {
    let n_cnot = (270 * n_ni + 126) * n * n + (144 + 228 * n_ni) * n - 12 * n_ni - 22;
    let big_n = 2f64.powi(n as i32);
    let k = f64::from(k_order);
    let n_exp = (3.0 * big_n * alpha * (25.0f64 / 3.0).powf(k) * (2.0 * alpha * big_n / eps).powf(1.0 / (2.0 * k))).ceil();
    FockEncodingCost { n_cnot, n_exp }
}

/// CNOTs in one conditional displacement: `2n² + 2n`.
pub fn advantage_boundary(n: usize) -> f64 {
    (2 * n * n + 2 * n) as f64
}

/// Largest Fock level `Γ` with `e^{a_nΓ + b_n} ≤ ε`, or `None` if even `|0⟩`
/// misses `ε`.
pub fn gamma_cutoff(n: usize, eps: f64, meta: &[f64; 4]) -> Option<usize> {
    let (a, b) = model_coefficients(n, meta);
    let g = ((eps.ln() - b) / a).floor();
    (g >= 0.0).then_some(g as usize)
}

/// One row of the hybrid/qubit advantage table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdvantageRow {
    pub n: usize,
    pub gamma_cutoff: Option<usize>,
    pub tau_ratio: f64,
}

/// Rows for `n = 1 … nmax` at target error `eps`.
pub fn advantage_rows(nmax: usize, eps: f64, meta: &[f64; 4]) -> Vec<AdvantageRow> {
    (1..=nmax)
        .map(|n| AdvantageRow { n, gamma_cutoff: gamma_cutoff(n, eps, meta), tau_ratio: advantage_boundary(n) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::errorlab::REFERENCE_META;

    #[test]
    fn worked_example() {
        assert_eq!(qubits_for(10, 1e-6), 6);
    }

    #[test]
    fn plug_back() {
        for gamma in [0usize, 3, 10, 25, 60] {
            for eps in [1e-3, 1e-6, 1e-10] {
                let n = qubits_for(gamma, eps);
                let (a, b) = model_coefficients(n, &REFERENCE_META);
                assert!(a * gamma as f64 + b <= eps.ln() + 1e-9, "Γ={gamma} ε={eps}");
                if n > 1 {
                    let (a, b) = model_coefficients(n - 1, &REFERENCE_META);
                    assert!(a * gamma as f64 + b > eps.ln(), "Γ={gamma} ε={eps}");
                }
            }
        }
    }

    #[test]
    fn qubits_nonincreasing_in_eps() {
        let mut prev = usize::MAX;
        for eps in [1e-12, 1e-8, 1e-4, 1e-2, 0.5] {
            let n = qubits_for(0, eps);
            assert!(n <= prev);
            prev = n;
        }
    }

    #[test]
    fn bound_closed_forms() {
        let (a, b) = (0.5, -20.0);
        let mut p = vec![0.0; 5];
        p[4] = 1.0;
        assert!((mixture_bound(a, b, &p) - (4.0 * a + b).exp()).abs() < 1e-20);
        let two = mixture_bound(a, b, &[0.5, 0.5]);
        let want = (((2.0 * b).exp() + (2.0 * a + 2.0 * b).exp()) / 2.0).sqrt();
        assert!((two - want).abs() < 1e-22);
    }

    #[test]
    fn fock_cost_formula() {
        assert_eq!(fock_encoding_cost(6, 1, 2.0, 1e-4, 1).n_cnot, 396 * 36 + 372 * 6 - 34);
        let loose = fock_encoding_cost(6, 1, 2.0, 1e-2, 1).n_exp;
        let tight = fock_encoding_cost(6, 1, 2.0, 1e-6, 1).n_exp;
        assert!(loose <= tight);
    }

    #[test]
    fn boundary_values() {
        assert_eq!(advantage_boundary(6), 84.0);
        assert_eq!(advantage_boundary(7), 112.0);
    }
}

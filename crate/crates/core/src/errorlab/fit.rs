// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Log-linear fits of per-Fock QFT errors.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::qft_error_fock;
use crate::grid::GridSpec;

/// Errors inside `[lo, hi]` enter the fit.
pub const FIT_WINDOW: (f64, f64) = (1e-9, 1e-1);

/// `(c₁, c₂, c₃, c₄)` with `a_n ≈ c₁2^{−n/2} + c₂` and `b_n ≈ c₃2^{n/2} + c₄`.
pub const REFERENCE_META: [f64; 4] = [4.2125, 0.1027, -5.7903, 16.2724];

/// One QFT error sample.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub n: usize,
    pub k: usize,
    pub epsilon: f64,
}

/// Per-register fits `ε(|k⟩) ≈ e^{a_n k + b_n}` and their meta-fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorFit {
    pub per_n: BTreeMap<usize, (f64, f64)>,
    /// `None` when fewer than two registers could be fitted.
    pub meta: Option<[f64; 4]>,
    pub fit_window: (f64, f64),
}

impl ErrorFit {
    /// `(a_n, b_n)`: the direct fit if available, otherwise the meta-fit.
    pub fn coefficients(&self, n: usize) -> Option<(f64, f64)> {
        self.per_n
            .get(&n)
            .copied()
            .or_else(|| self.meta.map(|m| super::model_coefficients(n, &m)))
    }

    /// `√(Σ p_k e^{2a_n k + 2b_n})`.
    pub fn general_state_bound(&self, probs: &[f64], n: usize) -> Option<f64> {
        self.coefficients(n).map(|(a, b)| super::mixture_bound(a, b, probs))
    }
}

/// Ordinary least squares `y ≈ slope·x + intercept`.
pub fn line_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Fit sweep points. For each `n`, points are taken in order of `k` up to the
/// first error above the window; those inside the window enter a log-space
/// line fit. Registers with fewer than three such points are skipped.
pub fn fit_points(points: &[SweepPoint]) -> ErrorFit {
    let mut by_n: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
    for p in points {
        by_n.entry(p.n).or_default().push((p.k, p.epsilon));
    }
    let (lo, hi) = FIT_WINDOW;
    let mut per_n = BTreeMap::new();
    for (n, mut pts) in by_n {
        pts.sort_by_key(|p| p.0);
        let (xs, ys): (Vec<f64>, Vec<f64>) = pts
            .iter()
            .take_while(|p| p.1 <= hi)
            .filter(|p| p.1 >= lo)
            .map(|&(k, e)| (k as f64, e.ln()))
            .unzip();
        if xs.len() < 3 {
            log::warn!("n={n}: only {} points inside the fit window, skipped", xs.len());
            continue;
        }
        per_n.insert(n, line_fit(&xs, &ys));
    }
    let meta = (per_n.len() >= 2).then(|| {
        let x: Vec<f64> = per_n.keys().map(|&n| 2f64.powf(-(n as f64) / 2.0)).collect();
        let y: Vec<f64> = per_n.keys().map(|&n| 2f64.powf(n as f64 / 2.0)).collect();
        let a: Vec<f64> = per_n.values().map(|c| c.0).collect();
        let b: Vec<f64> = per_n.values().map(|c| c.1).collect();
        let (c1, c2) = line_fit(&x, &a);
        let (c3, c4) = line_fit(&y, &b);
        [c1, c2, c3, c4]
    });
    ErrorFit { per_n, meta, fit_window: FIT_WINDOW }
}

/// QFT errors of `|k⟩` for every `n` in `ns` and `k ≤ kmax`. With `kmax =
/// None` each register is swept until the error leaves the fit window.
pub fn qft_sweep(ns: &[usize], kmax: Option<usize>) -> Vec<SweepPoint> {
    ns.par_iter()
        .flat_map_iter(|&n| {
            let grid = GridSpec::new(n);
            let errors = match kmax {
                Some(k) => qft_error_fock(k, &grid),
                None => {
                    let mut k = 32;
                    loop {
                        let e = qft_error_fock(k, &grid);
                        if e[k] > FIT_WINDOW.1 || k >= 4 * grid.dim() {
                            break e;
                        }
                        k *= 2;
                    }
                }
            };
            errors.into_iter().enumerate().map(move |(k, epsilon)| SweepPoint { n, k, epsilon })
        })
        .collect()
}

/// Sweep and fit.
pub fn fit_per_fock(ns: &[usize], kmax: Option<usize>) -> ErrorFit {
    fit_points(&qft_sweep(ns, kmax))
}

// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Harmonic-oscillator eigenfunctions.
//!
//! `ψ_k(x) = π^{-1/4} (2^k k!)^{-1/2} H_k(x) e^{-x²/2}` is evaluated with the
//! normalized three-term recurrence
//!
//! ```text
//! ψ_{k+1}(x) = x √(2/(k+1)) ψ_k(x) − √(k/(k+1)) ψ_{k−1}(x)
//! ```
//!
//! started from `π^{-1/4}` with the Gaussian factor carried separately as a
//! logarithm. The running pair is rescaled whenever it grows large, so neither
//! overflow nor premature underflow can occur for any `k` or `x`; the result
//! only underflows to zero when the true value is below the `f64` range.

use std::f64::consts::PI;

const RESCALE_ABOVE: f64 = 1e150;
const RESCALE_BY: f64 = 1e-150;
// ln(1e150)
const LN_RESCALE: f64 = 345.387_763_949_107_0;

#[derive(Clone, Copy)]
struct Recurrence {
    x: f64,
    prev: f64,
    cur: f64,
    k: usize,
    log_scale: f64,
}

impl Recurrence {
    fn new(x: f64) -> Self {
        Self {
            x,
            prev: 0.0,
            cur: PI.powf(-0.25),
            k: 0,
            log_scale: -0.5 * x * x,
        }
    }

    fn value(&self) -> f64 {
        if self.cur == 0.0 {
            0.0
        } else {
            self.cur * self.log_scale.exp()
        }
    }

    fn step(&mut self) {
        let k = self.k as f64;
        let next = self.x * (2.0 / (k + 1.0)).sqrt() * self.cur - (k / (k + 1.0)).sqrt() * self.prev;
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        if self.cur.abs() > RESCALE_ABOVE {
            self.cur *= RESCALE_BY;
            self.prev *= RESCALE_BY;
            self.log_scale += LN_RESCALE;
        }
    }
}

/// The `k`-th harmonic-oscillator eigenfunction `ψ_k(x)`.
pub fn hermite_psi(k: usize, x: f64) -> f64 {
    let mut rec = Recurrence::new(x);
    for _ in 0..k {
        rec.step();
    }
    rec.value()
}

/// All of `ψ_0(x) … ψ_kmax(x)` at one point.
pub fn hermite_psi_upto(kmax: usize, x: f64) -> Vec<f64> {
    let mut rec = Recurrence::new(x);
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(rec.value());
    for _ in 0..kmax {
        rec.step();
        out.push(rec.value());
    }
    out
}

/// Table `t[k][j] = ψ_k(xs[j])` for `k = 0..=kmax`.
pub fn hermite_table(kmax: usize, xs: &[f64]) -> Vec<Vec<f64>> {
    let mut table = vec![vec![0.0; xs.len()]; kmax + 1];
    for (j, &x) in xs.iter().enumerate() {
        for (k, v) in hermite_psi_upto(kmax, x).into_iter().enumerate() {
            table[k][j] = v;
        }
    }
    table
}

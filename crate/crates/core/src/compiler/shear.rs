// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Shear coefficients and linear (symplectic) actions of layer sequences.
//!
//! A unitary `U` acts on the quadrature vector `r = (q₀, p₀, q₁, p₁, …)` by
//! `U† r U = S r`. For `U = U₂U₁` the matrices compose as `S₂S₁`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::Layer;

/// Coefficients of `S(r) = e^{i(μ₄/2)q̂²} e^{i(μ₃/2)p̂²} e^{i(μ₂/2)q̂²} e^{i(μ₁/2)p̂²}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShearCoefficients {
    pub mu1: f64,
    pub mu2: f64,
    pub mu3: f64,
    pub mu4: f64,
}

impl ShearCoefficients {
    pub fn new(r: f64) -> Self {
        let root = r.exp_m1().abs().sqrt();
        let (up, down) = ((r / 2.0).exp(), (-r / 2.0).exp());
        let sgn = if r > 0.0 {
            1.0
        } else if r < 0.0 {
            -1.0
        } else {
            0.0
        };
        Self {
            mu1: -up * root,
            mu2: sgn * down * root,
            mu3: down * root,
            mu4: -sgn * up * root,
        }
    }

    /// `[μ₁, μ₂, μ₃, μ₄]`.
    pub fn as_array(&self) -> [f64; 4] {
        [self.mu1, self.mu2, self.mu3, self.mu4]
    }
}

/// Symplectic matrix of `e^{i(μ/2)q̂²}`: `p ↦ p + μ q`.
pub fn shear_q(mu: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, 0.0, mu, 1.0])
}

/// Symplectic matrix of `e^{i(μ/2)p̂²}`: `q ↦ q − μ p`.
pub fn shear_p(mu: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[1.0, -mu, 0.0, 1.0])
}

/// `R(θ)`: `q ↦ q cosθ + p sinθ`, `p ↦ −q sinθ + p cosθ`.
pub fn rotation_matrix(theta: f64) -> DMatrix<f64> {
    let (s, c) = theta.sin_cos();
    DMatrix::from_row_slice(2, 2, &[c, s, -s, c])
}

/// `S(r)`: `diag(e^{−r}, e^{r})`.
pub fn squeeze_matrix(r: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[(-r).exp(), 0.0, 0.0, r.exp()])
}

/// `BS(θ)` on `(q₀, p₀, q₁, p₁)`.
pub fn beamsplitter_matrix(theta: f64) -> DMatrix<f64> {
    let (s, c) = (theta / 2.0).sin_cos();
    DMatrix::from_row_slice(
        4,
        4,
        &[
            c, 0.0, 0.0, s, //
            0.0, c, -s, 0.0, //
            0.0, s, c, 0.0, //
            -s, 0.0, 0.0, c,
        ],
    )
}

/// Linear action of a layer sequence on `modes` modes. Conditional layers are
/// evaluated on the control branch with Z eigenvalue `branch` (±1).
pub fn layers_symplectic(layers: &[Layer], modes: usize, branch: f64) -> DMatrix<f64> {
    let dim = 2 * modes;
    let mut total = DMatrix::<f64>::identity(dim, dim);
    for layer in layers {
        let mut s = DMatrix::<f64>::identity(dim, dim);
        let sign = |control: Option<usize>| if control.is_some() { branch } else { 1.0 };
        match *layer {
            Layer::PhaseQ { .. } | Layer::ControlRz { .. } | Layer::GlobalPhase(_) => continue,
            Layer::PhaseQsq { mode, t, control } => s[(2 * mode + 1, 2 * mode)] = 2.0 * t * sign(control),
            Layer::PhaseQQ { a, b, t, control } => {
                let t = t * sign(control);
                s[(2 * a + 1, 2 * b)] = t;
                s[(2 * b + 1, 2 * a)] = t;
            }
            Layer::Qft { mode, inverse } => {
                let f = if inverse { -1.0 } else { 1.0 };
                s[(2 * mode, 2 * mode)] = 0.0;
                s[(2 * mode + 1, 2 * mode + 1)] = 0.0;
                s[(2 * mode, 2 * mode + 1)] = f;
                s[(2 * mode + 1, 2 * mode)] = -f;
            }
            Layer::Parity { mode, control } => {
                if control.is_none() || branch < 0.0 {
                    s[(2 * mode, 2 * mode)] = -1.0;
                    s[(2 * mode + 1, 2 * mode + 1)] = -1.0;
                }
            }
            Layer::Swap { a, b } => {
                s.swap_rows(2 * a, 2 * b);
                s.swap_rows(2 * a + 1, 2 * b + 1);
            }
        }
        total = s * total;
    }
    total
}

// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Reference dynamics in a truncated Fock basis.
//!
//! Gates act through the exponentials of their generators built from ladder
//! matrices. Number-diagonal gates (rotations, Fourier, parity) are applied as
//! exact phases. Conditional gates are evaluated branch by branch.

pub mod expm;

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;

use self::expm::{expmv, expmv_dense, SparseOp};
use crate::compiler::{HybridGate, Layer};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::hermite::hermite_table;

pub const DEFAULT_CUTOFF: usize = 256;
pub const DEFAULT_TWO_MODE_CUTOFF: usize = 64;
/// Maximum occupation tolerated in the top fifth of the Fock levels.
pub const TAIL_TOLERANCE: f64 = 1e-14;

/// Fock amplitudes of one or two modes. Two-mode index is `k₀·D + k₁`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockCoeffs {
    modes: usize,
    cutoff: usize,
    c: Vec<Complex64>,
}

impl FockCoeffs {
    pub fn new(modes: usize, cutoff: usize, c: Vec<Complex64>) -> Result<Self> {
        if !(1..=2).contains(&modes) || c.len() != cutoff.pow(modes as u32) {
            return Err(Error::Layout(format!("{modes}-mode coefficients need {} entries", cutoff.pow(modes as u32))));
        }
        Ok(Self { modes, cutoff, c })
    }

    /// `|k⟩` on one mode.
    pub fn fock(k: usize, cutoff: usize) -> Self {
        Self::fock_multi(&[k], cutoff)
    }

    /// `|k₀, k₁, …⟩`.
    pub fn fock_multi(ks: &[usize], cutoff: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); cutoff.pow(ks.len() as u32)];
        let idx = ks.iter().fold(0, |acc, &k| acc * cutoff + k);
        c[idx] = Complex64::new(1.0, 0.0);
        Self { modes: ks.len(), cutoff, c }
    }

    /// Single-mode superposition from leading coefficients.
    pub fn from_leading(coeffs: &[Complex64], cutoff: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); cutoff];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Self { modes: 1, cutoff, c }
    }

    /// Coherent state `e^{−|α|²/2} Σ αᵏ/√k! |k⟩`.
    pub fn coherent(alpha: Complex64, cutoff: usize) -> Self {
        let mut c = Vec::with_capacity(cutoff);
        let mut term = Complex64::new((-alpha.norm_sqr() / 2.0).exp(), 0.0);
        for k in 0..cutoff {
            c.push(term);
            term *= alpha / ((k + 1) as f64).sqrt();
        }
        Self { modes: 1, cutoff, c }
    }

    /// The same state on cutoff `cutoff`; fails if nonzero levels would be
    /// dropped.
    pub fn resized(&self, cutoff: usize) -> Result<Self> {
        let d = self.cutoff;
        let mut c = vec![Complex64::new(0.0, 0.0); cutoff.pow(self.modes as u32)];
        for (idx, a) in self.c.iter().enumerate() {
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let ks = if self.modes == 1 { [idx, 0] } else { [idx / d, idx % d] };
            if ks[0] >= cutoff || ks[1] >= cutoff {
                return Err(Error::Truncation { cutoff, tail: a.norm_sqr() });
            }
            let j = if self.modes == 1 { ks[0] } else { ks[0] * cutoff + ks[1] };
            c[j] = *a;
        }
        Ok(Self { modes: self.modes, cutoff, c })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.c
    }

    pub fn norm(&self) -> f64 {
        self.c.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `|c_k|²` of the photon number in `mode`, marginalized over others.
    pub fn photon_distribution(&self, mode: usize) -> Vec<f64> {
        let d = self.cutoff;
        let mut p = vec![0.0; d];
        for (i, a) in self.c.iter().enumerate() {
            let k = if self.modes == 1 { i } else if mode == 0 { i / d } else { i % d };
            p[k] += a.norm_sqr();
        }
        p
    }

    /// Distribution of the total photon number.
    pub fn total_photon_distribution(&self) -> Vec<f64> {
        let d = self.cutoff;
        let mut p = vec![0.0; self.modes * (d - 1) + 1];
        for (i, a) in self.c.iter().enumerate() {
            let k = if self.modes == 1 { i } else { i / d + i % d };
            p[k] += a.norm_sqr();
        }
        p
    }

    /// Largest occupation of the top fifth of the levels of any mode.
    pub fn tail(&self) -> f64 {
        let start = self.cutoff - self.cutoff / 5;
        (0..self.modes)
            .map(|m| self.photon_distribution(m)[start..].iter().sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn scale(&mut self, s: Complex64) {
        self.c.iter_mut().for_each(|a| *a *= s);
    }

    /// `self + s·other`.
    pub fn add_scaled(&self, other: &FockCoeffs, s: Complex64) -> Result<FockCoeffs> {
        if self.modes != other.modes || self.cutoff != other.cutoff {
            return Err(Error::Layout("mismatched Fock spaces".into()));
        }
        let c = self.c.iter().zip(&other.c).map(|(a, b)| a + s * b).collect();
        Ok(Self { modes: self.modes, cutoff: self.cutoff, c })
    }
}

/// Exponential route used by [`FockOracle`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExpRoute {
    /// Scaled Taylor series on the sparse generator.
    #[default]
    Sparse,
    /// Padé scaling-and-squaring on the dense generator.
    Dense,
}

/// Truncated Fock-space reference for one or two modes.
#[derive(Clone, Debug)]
pub struct FockOracle {
    cutoff: usize,
    modes: usize,
    route: ExpRoute,
}

impl FockOracle {
    pub fn single_mode() -> Self {
        Self::new(1, DEFAULT_CUTOFF)
    }

    pub fn two_mode() -> Self {
        Self::new(2, DEFAULT_TWO_MODE_CUTOFF)
    }

    pub fn new(modes: usize, cutoff: usize) -> Self {
        assert!((1..=2).contains(&modes) && cutoff >= 2);
        Self { cutoff, modes, route: ExpRoute::Sparse }
    }

    pub fn with_route(mut self, route: ExpRoute) -> Self {
        self.route = route;
        self
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    fn dim(&self) -> usize {
        self.cutoff.pow(self.modes as u32)
    }

    /// Flat index of `(k_mode, rest)`.
    fn index(&self, mode: usize, k: usize, other: usize) -> usize {
        match (self.modes, mode) {
            (1, _) => k,
            (_, 0) => k * self.cutoff + other,
            _ => other * self.cutoff + k,
        }
    }

    /// `â` on `mode`.
    pub fn annihilation(&self, mode: usize) -> SparseOp {
        let mut op = SparseOp::zeros(self.dim());
        let others = if self.modes == 1 { 1 } else { self.cutoff };
        for o in 0..others {
            for k in 1..self.cutoff {
                op.add(self.index(mode, k - 1, o), self.index(mode, k, o), Complex64::new((k as f64).sqrt(), 0.0));
            }
        }
        op
    }

    /// `â†` on `mode`.
    pub fn creation(&self, mode: usize) -> SparseOp {
        adjoint(&self.annihilation(mode))
    }

    /// `q̂ = (â + â†)/√2`.
    pub fn position(&self, mode: usize) -> SparseOp {
        sum(&self.annihilation(mode), &self.creation(mode), Complex64::new(1.0, 0.0)).scaled(Complex64::new(1.0 / SQRT_2, 0.0))
    }

    /// `p̂ = −i(â − â†)/√2`.
    pub fn momentum(&self, mode: usize) -> SparseOp {
        sum(&self.annihilation(mode), &self.creation(mode), Complex64::new(-1.0, 0.0)).scaled(Complex64::new(0.0, -1.0 / SQRT_2))
    }

    fn check_modes(&self, modes: &[usize]) -> Result<()> {
        for &m in modes {
            if m >= self.modes {
                return Err(Error::Layout(format!("oracle has {} modes, gate uses mode {m}", self.modes)));
            }
        }
        Ok(())
    }

    fn check_state(&self, c: &FockCoeffs) -> Result<()> {
        if c.modes != self.modes || c.cutoff != self.cutoff {
            return Err(Error::Layout("coefficients do not match the oracle".into()));
        }
        let tail = c.tail();
        if tail > TAIL_TOLERANCE {
            return Err(Error::Truncation { cutoff: self.cutoff, tail });
        }
        Ok(())
    }

    fn exp(&self, g: &SparseOp, c: &FockCoeffs) -> FockCoeffs {
        let out = match self.route {
            ExpRoute::Sparse => expmv(g, &c.c),
            ExpRoute::Dense => expmv_dense(g, &c.c),
        };
        FockCoeffs { modes: c.modes, cutoff: c.cutoff, c: out }
    }

    /// Multiply `|k⟩` of `mode` by `f(k)`.
    fn number_phase(&self, mode: usize, c: &FockCoeffs, f: impl Fn(usize) -> Complex64) -> FockCoeffs {
        let d = self.cutoff;
        let out = c
            .c
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let k = if self.modes == 1 { i } else if mode == 0 { i / d } else { i % d };
                a * f(k)
            })
            .collect();
        FockCoeffs { modes: c.modes, cutoff: d, c: out }
    }

    /// Anti-Hermitian generator `G` with `U = e^{G}`, for gates that are not
    /// number-diagonal.
    pub fn generator(&self, gate: &HybridGate) -> Result<Option<SparseOp>> {
        self.check_modes(&gate.modes())?;
        let i = Complex64::new(0.0, 1.0);
        Ok(Some(match *gate {
            HybridGate::D { mode, alpha } => {
                sum(&self.creation(mode).scaled(alpha), &self.annihilation(mode).scaled(-alpha.conj()), Complex64::new(1.0, 0.0))
            }
            HybridGate::S { mode, r } => {
                let a = self.annihilation(mode);
                let ad = self.creation(mode);
                sum(&product(&a, &a), &product(&ad, &ad), Complex64::new(-1.0, 0.0)).scaled(Complex64::new(r / 2.0, 0.0))
            }
            HybridGate::BS { a, b, theta } => {
                let x = product(&self.creation(a), &self.annihilation(b));
                let y = product(&self.annihilation(a), &self.creation(b));
                sum(&x, &y, Complex64::new(1.0, 0.0)).scaled(-i * theta / 2.0)
            }
            HybridGate::PhaseQ { mode, t } => self.position(mode).scaled(i * t),
            HybridGate::PhaseQQ { a, b, t } => product(&self.position(a), &self.position(b)).scaled(i * t),
            _ => return Ok(None),
        }))
    }

    /// Exact action of an unconditional gate.
    pub fn reference_apply(&self, gate: &HybridGate, input: &FockCoeffs) -> Result<FockCoeffs> {
        self.check_state(input)?;
        if gate.control().is_some() {
            return Err(Error::InvalidOperands(format!(
                "{} is conditional; use reference_apply_conditional",
                gate.name()
            )));
        }
        let out = match *gate {
            HybridGate::R { mode, theta } => {
                self.check_modes(&[mode])?;
                self.number_phase(mode, input, |k| Complex64::from_polar(1.0, -theta * (k as f64 + 0.5)))
            }
            HybridGate::Fourier { mode, inverse } => {
                self.check_modes(&[mode])?;
                let s = if inverse { 1.0 } else { -1.0 };
                self.number_phase(mode, input, |k| Complex64::from_polar(1.0, s * FRAC_PI_2 * (k % 4) as f64))
            }
            HybridGate::Parity { mode } => {
                self.check_modes(&[mode])?;
                self.number_phase(mode, input, |k| Complex64::new(if k % 2 == 0 { 1.0 } else { -1.0 }, 0.0))
            }
            HybridGate::ModeSwap { a, b } => {
                self.check_modes(&[a, b])?;
                let d = self.cutoff;
                let c = (0..d * d).map(|idx| input.c[(idx % d) * d + idx / d]).collect();
                FockCoeffs { modes: 2, cutoff: d, c }
            }
            _ => {
                let g = self.generator(gate)?.expect("non-diagonal gate has a generator");
                self.exp(&g, input)
            }
        };
        self.check_state(&out)?;
        Ok(out)
    }

    /// Exact action of a conditional gate on the control branches
    /// `|0⟩ ⊗ c0 + |1⟩ ⊗ c1`.
    pub fn reference_apply_conditional(
        &self,
        gate: &HybridGate,
        c0: &FockCoeffs,
        c1: &FockCoeffs,
    ) -> Result<(FockCoeffs, FockCoeffs)> {
        let plus = gate.branch(false).ok_or_else(|| Error::InvalidOperands(format!("{} has no control", gate.name())))?;
        let minus = gate.branch(true).expect("conditional gate");
        Ok((self.reference_apply(&plus, c0)?, self.reference_apply(&minus, c1)?))
    }

    /// Continuous action of one compiler layer on the control branch with Z
    /// eigenvalue `branch` (±1).
    pub fn apply_layer(&self, layer: &Layer, input: &FockCoeffs, branch: f64) -> Result<FockCoeffs> {
        let sign = |c: Option<usize>| if c.is_some() { branch } else { 1.0 };
        let gate = match *layer {
            Layer::PhaseQ { mode, t, control } => HybridGate::PhaseQ { mode, t: t * sign(control) },
            Layer::PhaseQsq { mode, t, control } => HybridGate::PhaseQQ { a: mode, b: mode, t: t * sign(control) },
            Layer::PhaseQQ { a, b, t, control } => HybridGate::PhaseQQ { a, b, t: t * sign(control) },
            Layer::Qft { mode, inverse } => HybridGate::Fourier { mode, inverse },
            Layer::Parity { mode, control } => {
                if control.is_some() && branch > 0.0 {
                    return Ok(input.clone());
                }
                HybridGate::Parity { mode }
            }
            Layer::Swap { a, b } => HybridGate::ModeSwap { a, b },
            Layer::ControlRz { angle, .. } => {
                let mut out = input.clone();
                out.scale(Complex64::from_polar(1.0, -branch * angle / 2.0));
                return Ok(out);
            }
            Layer::GlobalPhase(p) => {
                let mut out = input.clone();
                out.scale(Complex64::from_polar(1.0, p));
                return Ok(out);
            }
        };
        self.reference_apply(&gate, input)
    }

    /// States entering each QFT layer, in order, when `layers` act on
    /// `input`. Also returns the final state.
    pub fn states_before_qft(&self, layers: &[Layer], input: &FockCoeffs, branch: f64) -> Result<(Vec<FockCoeffs>, FockCoeffs)> {
        let mut before = Vec::new();
        let mut state = input.clone();
        for layer in layers {
            if matches!(layer, Layer::Qft { .. }) {
                before.push(state.clone());
            }
            state = self.apply_layer(layer, &state, branch)?;
        }
        Ok((before, state))
    }
}

fn adjoint(op: &SparseOp) -> SparseOp {
    op.adjoint()
}

fn sum(a: &SparseOp, b: &SparseOp, s: Complex64) -> SparseOp {
    a.plus_scaled(b, s)
}

fn product(a: &SparseOp, b: &SparseOp) -> SparseOp {
    a.compose(b)
}

/// `√λ Σ c_k ψ_k(λ j̃)` on the grid; two-mode states on the product grid with
/// mode 0 in the low bits.
pub fn reference_wavefunction(coeffs: &FockCoeffs, grid: &GridSpec) -> Vec<Complex64> {
    let d = coeffs.cutoff;
    let kmax = match coeffs.modes {
        1 => coeffs.c.iter().rposition(|a| a.norm_sqr() > 0.0).unwrap_or(0),
        _ => d - 1,
    };
    let table = hermite_table(kmax, &grid.points());
    let sl = grid.lambda().sqrt();
    let n = grid.dim();
    match coeffs.modes {
        1 => (0..n)
            .map(|j| (0..=kmax).map(|k| coeffs.c[k] * table[k][j]).sum::<Complex64>() * sl)
            .collect(),
        _ => {
            let t = DMatrix::from_fn(d, n, |k, j| Complex64::new(table[k][j], 0.0));
            let c = DMatrix::from_fn(d, d, |k0, k1| coeffs.c[k0 * d + k1]);
            // w[j0, j1] = Σ t[k0, j0] c[k0, k1] t[k1, j1]
            let w = t.transpose() * c * &t;
            let s = sl * sl;
            (0..n * n).map(|idx| w[(idx % n, idx / n)] * s).collect()
        }
    }
}

// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense statevector executor.

mod layout;
mod state;

use num_complex::Complex64;

pub use self::layout::{RegisterLayout, Slot, DEFAULT_MAX_QUBITS};
pub use self::state::StateVector;
pub(crate) use self::state::scatter;

use crate::compiler::lower;
use crate::error::{Error, Result};
use crate::grid::shifted_qft_matrix;

/// Which of the three conditional position phases to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CondForm {
    /// `e^{itZ q̂}` on one mode.
    Q(usize),
    /// `e^{itZ q̂²}` on one mode.
    Qsq(usize),
    /// `e^{itZ q̂_a q̂_b}` on two distinct modes.
    QQ(usize, usize),
}

/// Gates that permute grid points without any arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structural {
    Parity { mode: usize },
    CondParity { control: usize, mode: usize },
    ModeSwap { a: usize, b: usize },
}

/// How a mode-level QFT is executed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum QftRoute {
    #[default]
    Circuit,
    Dense,
}

impl StateVector {
    /// Product of the encoded vacuum on every mode with bare qubits in `|0⟩`.
    pub fn vacuum(layout: RegisterLayout) -> Self {
        if layout.modes() == 0 {
            return Self::zero(layout);
        }
        let v = crate::grid::encode_fock(0, crate::grid::Basis::Position, &layout.grid());
        let modes = vec![v; layout.modes()];
        Self::product(layout, &modes, &vec![false; layout.dv_qubits()]).expect("shape matches layout")
    }

    /// `e^{itq̂}` on `mode`.
    pub fn apply_phase_q(&mut self, mode: usize, t: f64) -> Result<()> {
        let qs = self.layout().mode_qubits(mode)?;
        let lam = self.layout().grid().lambda();
        self.apply_circuit(&lower::phase_q(&qs, lam, t))
    }

    /// `e^{itq̂_a q̂_b}`, or `e^{itq̂_a²}` when `a == b`.
    pub fn apply_phase_qq(&mut self, a: usize, b: usize, t: f64) -> Result<()> {
        let qa = self.layout().mode_qubits(a)?;
        let lam = self.layout().grid().lambda();
        let c = if a == b {
            lower::phase_qsq(&qa, lam, t)
        } else {
            let qb = self.layout().mode_qubits(b)?;
            lower::phase_qq(&qa, &qb, lam, t)
        };
        self.apply_circuit(&c)
    }

    /// Conditional position phase with the Pauli-Z of `control`: the `|0⟩`
    /// branch gets `+t`, the `|1⟩` branch `−t`.
    pub fn apply_cond_phase(&mut self, control: usize, form: CondForm, t: f64) -> Result<()> {
        let lam = self.layout().grid().lambda();
        let c = match form {
            CondForm::Q(m) => lower::cond_phase_q(control, &self.mode_qubits_excluding(m, control)?, lam, t),
            CondForm::Qsq(m) => lower::cond_phase_qsq(control, &self.mode_qubits_excluding(m, control)?, lam, t),
            CondForm::QQ(a, b) => {
                if a == b {
                    return Err(Error::InvalidOperands("QQ form needs two distinct modes".into()));
                }
                let qa = self.mode_qubits_excluding(a, control)?;
                let qb = self.mode_qubits_excluding(b, control)?;
                lower::cond_phase_qq(control, &qa, &qb, lam, t)
            }
        };
        self.apply_circuit(&c)
    }

    fn mode_qubits_excluding(&self, mode: usize, control: usize) -> Result<Vec<usize>> {
        let qs = self.layout().mode_qubits(mode)?;
        if qs.contains(&control) {
            return Err(Error::DuplicateOperand(control));
        }
        Ok(qs)
    }

    /// Shifted QFT (or its adjoint) on `mode`.
    pub fn apply_qft(&mut self, mode: usize, inverse: bool, route: QftRoute) -> Result<()> {
        let qs = self.layout().mode_qubits(mode)?;
        match route {
            QftRoute::Circuit => self.apply_qft_qubits(&qs, inverse),
            QftRoute::Dense => {
                let f = shifted_qft_matrix(&self.layout().grid());
                self.apply_mode_matrix(mode, |k, j| if inverse { f[(j, k)].conj() } else { f[(k, j)] })
            }
        }
    }

    /// Apply an `N×N` matrix given entrywise to one mode register.
    pub fn apply_mode_matrix(&mut self, mode: usize, m: impl Fn(usize, usize) -> Complex64) -> Result<()> {
        let qs = self.layout().mode_qubits(mode)?;
        let dim = 1usize << qs.len();
        let dense: Vec<Complex64> = (0..dim * dim).map(|i| m(i / dim, i % dim)).collect();
        let mask: usize = qs.iter().map(|&q| 1usize << q).sum();
        let total = self.layout().dim();
        let offsets: Vec<usize> = (0..dim).map(|j| scatter(j, &qs)).collect();
        let mut amps = self.amplitudes().to_vec();
        let mut col = vec![Complex64::new(0.0, 0.0); dim];
        for base in (0..total).filter(|i| i & mask == 0) {
            for (j, &o) in offsets.iter().enumerate() {
                col[j] = amps[base | o];
            }
            for (k, &o) in offsets.iter().enumerate() {
                amps[base | o] = dense[k * dim..(k + 1) * dim].iter().zip(&col).map(|(a, b)| a * b).sum();
            }
        }
        *self = StateVector::from_amplitudes(*self.layout(), amps)?;
        Ok(())
    }

    pub fn apply_structural(&mut self, gate: Structural) -> Result<()> {
        let c = match gate {
            Structural::Parity { mode } => lower::parity(&self.layout().mode_qubits(mode)?, None),
            Structural::CondParity { control, mode } => {
                lower::parity(&self.mode_qubits_excluding(mode, control)?, Some(control))
            }
            Structural::ModeSwap { a, b } => {
                if a == b {
                    return Err(Error::InvalidOperands("mode swap needs two distinct modes".into()));
                }
                lower::swap_registers(&self.layout().mode_qubits(a)?, &self.layout().mode_qubits(b)?)
            }
        };
        self.apply_circuit(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::ElementaryGate;
    use crate::grid::{encode_fock, Basis, GridSpec};
    use crate::seeded_rng;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
    }

    fn random_state(layout: RegisterLayout, seed: u64) -> StateVector {
        let mut rng = seeded_rng(seed);
        let amps = (0..layout.dim()).map(|_| c(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)).collect();
        let mut s = StateVector::from_amplitudes(layout, amps).unwrap();
        s.normalize().unwrap();
        s
    }

    /// Dense matrix of a gate on `q` qubits, built column by column.
    fn dense_of(gate: &ElementaryGate, q: usize) -> Vec<Vec<Complex64>> {
        let layout = RegisterLayout::new(0, 0, q).unwrap();
        (0..1 << q)
            .map(|col| {
                let mut amps = vec![c(0.0, 0.0); 1 << q];
                amps[col] = c(1.0, 0.0);
                let mut s = StateVector::from_amplitudes(layout, amps).unwrap();
                s.apply_elementary(gate).unwrap();
                s.into_amplitudes()
            })
            .collect()
    }

    #[test]
    fn x_flips_zero_to_one() {
        let mut s = StateVector::zero(RegisterLayout::new(0, 0, 1).unwrap());
        s.apply_elementary(&ElementaryGate::X { qubit: 0 }).unwrap();
        assert_eq!(s.amplitudes(), &[c(0.0, 0.0), c(1.0, 0.0)]);
    }

    #[test]
    fn rz_group_law() {
        let layout = RegisterLayout::new(0, 0, 3).unwrap();
        let mut a = random_state(layout, 3);
        let mut b = a.clone();
        a.apply_elementary(&ElementaryGate::Rz { qubit: 1, angle: 0.7 }).unwrap();
        a.apply_elementary(&ElementaryGate::Rz { qubit: 1, angle: 0.7 }).unwrap();
        b.apply_elementary(&ElementaryGate::Rz { qubit: 1, angle: 1.4 }).unwrap();
        assert!(dist(a.amplitudes(), b.amplitudes()) < 1e-12);
    }

    #[test]
    fn czrot_matches_four_by_four() {
        let theta = 0.9;
        let m = dense_of(&ElementaryGate::CzRot { a: 0, b: 1, angle: theta }, 2);
        let e = |s: f64| Complex64::from_polar(1.0, -s * theta / 2.0);
        // Z⊗Z eigenvalues on |00⟩, |01⟩, |10⟩, |11⟩
        let want = [e(1.0), e(-1.0), e(-1.0), e(1.0)];
        for col in 0..4 {
            for row in 0..4 {
                let w = if row == col { want[row] } else { c(0.0, 0.0) };
                assert!((m[col][row] - w).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn two_qubit_gates_match_permutations() {
        let cnot = dense_of(&ElementaryGate::Cnot { control: 0, target: 2 }, 3);
        let swap = dense_of(&ElementaryGate::Swap { a: 2, b: 0 }, 3);
        for col in 0..8usize {
            let cn = if col & 1 == 1 { col ^ 4 } else { col };
            let sw = (col & 2) | (col >> 2 & 1) | (col & 1) << 2;
            for row in 0..8 {
                assert_eq!(cnot[col][row], c(if row == cn { 1.0 } else { 0.0 }, 0.0));
                assert_eq!(swap[col][row], c(if row == sw { 1.0 } else { 0.0 }, 0.0));
            }
        }
    }

    #[test]
    fn hadamard_on_high_qubit_of_large_state() {
        let layout = RegisterLayout::new(0, 0, 16).unwrap();
        let mut s = StateVector::zero(layout);
        s.apply_elementary(&ElementaryGate::H { qubit: 15 }).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitudes()[0].re - h).abs() < 1e-15);
        assert!((s.amplitudes()[1 << 15].re - h).abs() < 1e-15);
    }

    #[test]
    fn qft_circuit_matches_dense_including_phase() {
        for n in 1..=8 {
            let layout = RegisterLayout::new(1, n, 1).unwrap();
            for inverse in [false, true] {
                let mut a = random_state(layout, n as u64);
                let mut b = a.clone();
                a.apply_qft(0, inverse, QftRoute::Circuit).unwrap();
                b.apply_qft(0, inverse, QftRoute::Dense).unwrap();
                assert!(dist(a.amplitudes(), b.amplitudes()) < 1e-10, "n={n} inverse={inverse}");
            }
        }
    }

    #[test]
    fn qft_round_trip_and_fock_eigen_relation() {
        let layout = RegisterLayout::new(1, 7, 0).unwrap();
        let g = GridSpec::new(7);
        for k in 0..6 {
            let v = encode_fock(k, Basis::Position, &g);
            let mut s = StateVector::from_amplitudes(layout, v.clone()).unwrap();
            s.apply_qft(0, false, QftRoute::Circuit).unwrap();
            let want = encode_fock(k, Basis::Momentum, &g);
            assert!(dist(s.amplitudes(), &want) < 1e-9, "k={k}");
            s.apply_qft(0, true, QftRoute::Circuit).unwrap();
            assert!(dist(s.amplitudes(), &v) < 1e-12);
        }
    }

    #[test]
    fn parity_reverses_grid() {
        let layout = RegisterLayout::new(1, 5, 0).unwrap();
        let g = GridSpec::new(5);
        let v = encode_fock(3, Basis::Position, &g);
        let mut s = StateVector::from_amplitudes(layout, v.clone()).unwrap();
        s.apply_structural(Structural::Parity { mode: 0 }).unwrap();
        for j in 0..32 {
            assert_eq!(s.amplitudes()[j], v[31 - j]);
        }
        s.apply_structural(Structural::Parity { mode: 0 }).unwrap();
        assert_eq!(s.amplitudes(), &v[..]);
    }

    #[test]
    fn cond_parity_with_control_zero_is_identity() {
        let layout = RegisterLayout::new(1, 4, 1).unwrap();
        let v = encode_fock(1, Basis::Position, &GridSpec::new(4));
        let mut s = StateVector::product(layout, &[v], &[false]).unwrap();
        let before = s.clone();
        s.apply_structural(Structural::CondParity { control: 4, mode: 0 }).unwrap();
        assert_eq!(s, before);
    }

    #[test]
    fn measure_basis_state_is_deterministic() {
        let layout = RegisterLayout::new(0, 0, 4).unwrap();
        let mut amps = vec![c(0.0, 0.0); 16];
        amps[0b1010] = c(0.0, 1.0);
        let mut s = StateVector::from_amplitudes(layout, amps).unwrap();
        let mut rng = seeded_rng(1);
        for _ in 0..5 {
            assert_eq!(s.measure_z(&[0, 1, 2, 3], &mut rng).unwrap(), vec![false, true, false, true]);
        }
    }

    #[test]
    fn plus_state_statistics() {
        let layout = RegisterLayout::new(0, 0, 1).unwrap();
        let mut rng = seeded_rng(7);
        let shots = 10_000;
        let mut ones = 0;
        for _ in 0..shots {
            let mut s = StateVector::zero(layout);
            s.apply_elementary(&ElementaryGate::H { qubit: 0 }).unwrap();
            ones += usize::from(s.measure_z(&[0], &mut rng).unwrap()[0]);
        }
        let sigma = (shots as f64 * 0.25).sqrt();
        assert!((ones as f64 - shots as f64 / 2.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn zero_state_cannot_be_measured() {
        let layout = RegisterLayout::new(0, 0, 2).unwrap();
        let mut s = StateVector::from_amplitudes(layout, vec![c(0.0, 0.0); 4]).unwrap();
        assert_eq!(s.measure_z(&[0], &mut seeded_rng(0)), Err(Error::ZeroNorm));
    }

    #[test]
    fn append_and_remove_mode() {
        let layout = RegisterLayout::new(1, 3, 1).unwrap();
        let g = GridSpec::new(3);
        let a = encode_fock(1, Basis::Position, &g);
        let b = encode_fock(0, Basis::Position, &g);
        let mut s = StateVector::product(layout, &[a.clone()], &[true]).unwrap();
        s.append_mode(&b).unwrap();
        let direct = StateVector::product(RegisterLayout::new(2, 3, 1).unwrap(), &[a.clone(), b.clone()], &[true]).unwrap();
        assert!(dist(s.amplitudes(), direct.amplitudes()) < 1e-15);
        s.collapse(&[3, 4, 5], 2).unwrap();
        s.remove_mode(1, 2).unwrap();
        assert_eq!(s.layout(), &layout);
        let mut want = StateVector::product(layout, &[a], &[true]).unwrap();
        want.normalize().unwrap();
        assert!(dist(s.amplitudes(), want.amplitudes()) < 1e-12);
    }

    #[test]
    fn project_selects_branch() {
        let layout = RegisterLayout::new(0, 0, 3).unwrap();
        let s = random_state(layout, 11);
        let one = s.project(1, true).unwrap();
        let zero = s.project(1, false).unwrap();
        for r in 0..4usize {
            let i = (r & 1) | (r & 2) << 1;
            assert_eq!(zero[r], s.amplitudes()[i]);
            assert_eq!(one[r], s.amplitudes()[i | 2]);
        }
    }
}

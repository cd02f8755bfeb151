// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;
use rand::Rng as _;
use rayon::prelude::*;

use super::layout::RegisterLayout;
use crate::circuit::{qft_circuit, CompiledCircuit, ElementaryGate, Op};
use crate::error::{Error, Result};

const PAR_THRESHOLD: usize = 1 << 14;

/// Dense amplitudes over every qubit of a [`RegisterLayout`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
    layout: RegisterLayout,
}

impl StateVector {
    /// Computational basis state `|0…0⟩`.
    pub fn zero(layout: RegisterLayout) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { amps, layout }
    }

    pub fn from_amplitudes(layout: RegisterLayout, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::Layout(format!("expected {} amplitudes, got {}", layout.dim(), amps.len())));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("amplitude".into()));
        }
        Ok(Self { amps, layout })
    }

    /// Product state: one encoded vector per mode and a bit value per bare
    /// qubit.
    pub fn product(layout: RegisterLayout, modes: &[Vec<Complex64>], dv_bits: &[bool]) -> Result<Self> {
        let n = layout.qubits_per_mode();
        if modes.len() != layout.modes() || dv_bits.len() != layout.dv_qubits() {
            return Err(Error::Layout("product state does not match layout".into()));
        }
        if modes.iter().any(|m| m.len() != 1 << n) {
            return Err(Error::Layout(format!("mode vectors must have length {}", 1 << n)));
        }
        let mut dv_index = 0usize;
        for (d, &b) in dv_bits.iter().enumerate() {
            if b {
                dv_index |= 1 << d;
            }
        }
        let base = dv_index << (layout.modes() * n);
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
        let mode_dim = 1usize << (layout.modes() * n);
        let mask = (1usize << n) - 1;
        for (idx, a) in amps[base..base + mode_dim].iter_mut().enumerate() {
            let mut v = Complex64::new(1.0, 0.0);
            for (i, m) in modes.iter().enumerate() {
                v *= m[(idx >> (i * n)) & mask];
            }
            *a = v;
        }
        Self::from_amplitudes(layout, amps)
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let inv = 1.0 / norm;
        self.amps.iter_mut().for_each(|a| *a *= inv);
        Ok(())
    }

    pub fn scale(&mut self, factor: Complex64) {
        self.amps.iter_mut().for_each(|a| *a *= factor);
    }

    fn check(&self, gate: &ElementaryGate) -> Result<()> {
        gate.validate(self.layout.total_qubits())
    }

    fn for_each_diag(&mut self, f: impl Fn(usize) -> Complex64 + Sync) {
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_iter_mut().enumerate().for_each(|(i, a)| *a *= f(i));
        } else {
            self.amps.iter_mut().enumerate().for_each(|(i, a)| *a *= f(i));
        }
    }

    fn for_each_pair(&mut self, q: usize, f: impl Fn(&mut Complex64, &mut Complex64, usize) + Sync) {
        let stride = 1usize << q;
        let body = |(c, chunk): (usize, &mut [Complex64])| {
            let (lo, hi) = chunk.split_at_mut(stride);
            for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                f(a, b, c * 2 * stride + k);
            }
        };
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps.par_chunks_mut(2 * stride).enumerate().for_each(body);
        } else {
            self.amps.chunks_mut(2 * stride).enumerate().for_each(body);
        }
    }

    /// Apply one unitary elementary gate. `Mz` is rejected; use
    /// [`StateVector::measure_z`].
    pub fn apply_elementary(&mut self, gate: &ElementaryGate) -> Result<()> {
        self.check(gate)?;
        match *gate {
            ElementaryGate::H { qubit } => {
                let s = std::f64::consts::FRAC_1_SQRT_2;
                self.for_each_pair(qubit, |a, b, _| {
                    let (x, y) = (*a, *b);
                    *a = (x + y) * s;
                    *b = (x - y) * s;
                });
            }
            ElementaryGate::X { qubit } => self.for_each_pair(qubit, |a, b, _| std::mem::swap(a, b)),
            ElementaryGate::Rz { qubit, angle } => {
                let lo = Complex64::from_polar(1.0, -angle / 2.0);
                let hi = lo.conj();
                self.for_each_diag(|i| if i >> qubit & 1 == 0 { lo } else { hi });
            }
            ElementaryGate::CzRot { a, b, angle } => {
                let same = Complex64::from_polar(1.0, -angle / 2.0);
                let diff = same.conj();
                self.for_each_diag(|i| if (i >> a ^ i >> b) & 1 == 0 { same } else { diff });
            }
            ElementaryGate::DiagPhase { ref qubits, slope } => {
                let qubits = qubits.clone();
                self.for_each_diag(|i| {
                    let j = qubits.iter().enumerate().fold(0u64, |acc, (r, &q)| acc | (((i >> q) & 1) as u64) << r);
                    Complex64::from_polar(1.0, slope * j as f64)
                });
            }
            ElementaryGate::Cnot { control, target } => {
                self.for_each_pair(target, |a, b, i| {
                    if i >> control & 1 == 1 {
                        std::mem::swap(a, b);
                    }
                });
            }
            ElementaryGate::Swap { a, b } => {
                let (lo, hi) = (a.min(b), a.max(b));
                // within each pair split on `hi`, exchange |1_lo 0_hi⟩ with |0_lo 1_hi⟩
                let stride = 1usize << hi;
                let body = |chunk: &mut [Complex64]| {
                    let (zero, one) = chunk.split_at_mut(stride);
                    for k in 0..stride {
                        if k >> lo & 1 == 1 {
                            std::mem::swap(&mut zero[k], &mut one[k ^ (1 << lo)]);
                        }
                    }
                };
                if self.amps.len() >= PAR_THRESHOLD {
                    self.amps.par_chunks_mut(2 * stride).for_each(body);
                } else {
                    self.amps.chunks_mut(2 * stride).for_each(body);
                }
            }
            ElementaryGate::Mz { .. } => {
                return Err(Error::InvalidOperands("Mz is not unitary; use measure_z".into()));
            }
        }
        Ok(())
    }

    /// Apply a compiled circuit, QFT units included, and its global phase.
    pub fn apply_circuit(&mut self, circuit: &CompiledCircuit) -> Result<()> {
        for op in &circuit.ops {
            match op {
                Op::Gate(g) => self.apply_elementary(g)?,
                Op::Qft { qubits, inverse } => self.apply_qft_qubits(qubits, *inverse)?,
            }
        }
        if circuit.global_phase != 0.0 {
            self.scale(Complex64::from_polar(1.0, circuit.global_phase));
        }
        Ok(())
    }

    /// Shifted QFT on arbitrary qubits via its elementary circuit.
    pub fn apply_qft_qubits(&mut self, qubits: &[usize], inverse: bool) -> Result<()> {
        self.apply_circuit(&qft_circuit(qubits, inverse))
    }

    /// Probabilities of the `2^k` outcomes on `qubits` (little-endian).
    pub fn probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>> {
        let total = self.layout.total_qubits();
        for (i, &q) in qubits.iter().enumerate() {
            if q >= total {
                return Err(Error::QubitOutOfRange { qubit: q, total });
            }
            if qubits[..i].contains(&q) {
                return Err(Error::DuplicateOperand(q));
            }
        }
        let mut probs = vec![0.0; 1 << qubits.len()];
        for (i, a) in self.amps.iter().enumerate() {
            probs[gather(i, qubits)] += a.norm_sqr();
        }
        Ok(probs)
    }

    /// Sample `qubits` in the Z basis, collapse and renormalize.
    pub fn measure_z(&mut self, qubits: &[usize], rng: &mut crate::Rng) -> Result<Vec<bool>> {
        let probs = self.probabilities(qubits)?;
        let total: f64 = probs.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroNorm);
        }
        let mut u = rng.gen::<f64>() * total;
        let mut outcome = probs.len() - 1;
        for (k, p) in probs.iter().enumerate() {
            if u < *p {
                outcome = k;
                break;
            }
            u -= p;
        }
        while probs[outcome] == 0.0 {
            outcome -= 1;
        }
        self.collapse(qubits, outcome)?;
        Ok((0..qubits.len()).map(|r| outcome >> r & 1 == 1).collect())
    }

    /// Project `qubits` onto the little-endian value `outcome` and renormalize.
    pub fn collapse(&mut self, qubits: &[usize], outcome: usize) -> Result<()> {
        for (i, a) in self.amps.iter_mut().enumerate() {
            if gather(i, qubits) != outcome {
                *a = Complex64::new(0.0, 0.0);
            }
        }
        self.normalize()
    }

    /// Amplitudes of the other qubits on the branch where `qubit` equals
    /// `bit`, without renormalization.
    pub fn project(&self, qubit: usize, bit: bool) -> Result<Vec<Complex64>> {
        let total = self.layout.total_qubits();
        if qubit >= total {
            return Err(Error::QubitOutOfRange { qubit, total });
        }
        let low = (1usize << qubit) - 1;
        Ok((0..self.amps.len() / 2)
            .map(|r| {
                let i = (r & low) | ((r & !low) << 1) | (usize::from(bit) << qubit);
                self.amps[i]
            })
            .collect())
    }

    /// Append a mode register in state `encoding` above the existing modes;
    /// bare qubits move up by `n`.
    pub fn append_mode(&mut self, encoding: &[Complex64]) -> Result<()> {
        let layout = self.layout.with_extra_mode()?;
        let n = self.layout.qubits_per_mode();
        if encoding.len() != 1 << n {
            return Err(Error::Layout(format!("mode vectors must have length {}", 1 << n)));
        }
        let split = self.layout.modes() * n;
        let low = (1usize << split) - 1;
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
        for (i, a) in self.amps.iter().enumerate() {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            let base = (i & low) | ((i & !low) << n);
            for (j, e) in encoding.iter().enumerate() {
                amps[base | j << split] = a * e;
            }
        }
        self.amps = amps;
        self.layout = layout;
        Ok(())
    }

    /// Remove mode `mode`, keeping the branch where its register holds
    /// `value`. The caller is expected to have collapsed it; the result is
    /// renormalized.
    pub fn remove_mode(&mut self, mode: usize, value: usize) -> Result<()> {
        let layout = self.layout.without_mode(mode)?;
        let n = self.layout.qubits_per_mode();
        if value >= 1 << n {
            return Err(Error::IndexOutOfRange { index: value, limit: 1 << n });
        }
        let start = mode * n;
        let low = (1usize << start) - 1;
        let amps: Vec<Complex64> = (0..layout.dim())
            .map(|r| self.amps[(r & low) | value << start | (r & !low) << n])
            .collect();
        self.amps = amps;
        self.layout = layout;
        self.normalize()
    }

    /// Mode amplitudes for a product state whose other registers are in known
    /// basis states: the slice of `mode` with every other qubit fixed by
    /// `others` (a full index with the mode's bits cleared).
    pub fn mode_slice(&self, mode: usize, others: usize) -> Result<Vec<Complex64>> {
        let qs = self.layout.mode_qubits(mode)?;
        Ok((0..1usize << qs.len()).map(|j| self.amps[others | scatter(j, &qs)]).collect())
    }
}

/// Little-endian value of `qubits` within basis index `i`.
pub(crate) fn gather(i: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (r, &q)| acc | ((i >> q) & 1) << r)
}

/// Basis index with `qubits` set from the little-endian value `j`.
pub(crate) fn scatter(j: usize, qubits: &[usize]) -> usize {
    qubits.iter().enumerate().fold(0, |acc, (r, &q)| acc | ((j >> r) & 1) << q)
}

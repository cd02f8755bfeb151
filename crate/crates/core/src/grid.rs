// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Discretization grid and position / momentum encodings.
//!
//! A mode register of `n` qubits holds `N = 2^n` samples of a wavefunction at
//! `x_j = λ (j − (N−1)/2)`, `λ = √(2π/N)`. The grid is symmetric about the
//! origin and has no sample at `x = 0` (the shifted index is half-integral).

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hermite::hermite_psi;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    n: usize,
    dim: usize,
    lambda: f64,
}

impl GridSpec {
    /// Grid for `n` qubits per mode. Panics if `n` is 0 or too large to index.
    pub fn new(n: usize) -> Self {
        assert!((1..usize::BITS as usize - 1).contains(&n), "qubits per mode must be in 1..{}", usize::BITS - 1);
        let dim = 1usize << n;
        Self {
            n,
            dim,
            lambda: (2.0 * PI / dim as f64).sqrt(),
        }
    }

    /// Qubits per mode.
    pub fn qubits(&self) -> usize {
        self.n
    }

    /// Grid size `N = 2^n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Spacing `λ = √(2π/N)`.
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Shifted index `j − (N−1)/2`.
    pub fn shifted_index(&self, j: usize) -> f64 {
        j as f64 - (self.dim as f64 - 1.0) / 2.0
    }

    /// All grid points in index order.
    pub fn points(&self) -> Vec<f64> {
        (0..self.dim).map(|j| self.lambda * self.shifted_index(j)).collect()
    }
}

/// Position of grid index `j`, `λ (j − (N−1)/2)`.
pub fn grid_position(j: usize, grid: &GridSpec) -> Result<f64> {
    if j >= grid.dim {
        return Err(Error::IndexOutOfRange { index: j, limit: grid.dim });
    }
    Ok(grid.lambda * grid.shifted_index(j))
}

/// Photon number label of a Fock state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockLabel(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Basis {
    Position,
    Momentum,
}

/// A single-mode wavefunction in either the position or the momentum
/// representation.
#[derive(Clone)]
pub struct Wavefunction {
    basis: Basis,
    eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl fmt::Debug for Wavefunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Wavefunction").field("basis", &self.basis).finish_non_exhaustive()
    }
}

impl Wavefunction {
    pub fn from_fn(basis: Basis, f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self { basis, eval: Arc::new(f) }
    }

    pub fn zero(basis: Basis) -> Self {
        Self::from_fn(basis, |_| Complex64::new(0.0, 0.0))
    }

    /// Fock state `|k⟩`. The momentum wavefunction is `(−i)^k ψ_k(p)`.
    pub fn fock(k: FockLabel, basis: Basis) -> Self {
        let k = k.0;
        let phase = match basis {
            Basis::Position => Complex64::new(1.0, 0.0),
            Basis::Momentum => Complex64::new(0.0, -1.0).powu(k as u32),
        };
        Self::from_fn(basis, move |x| phase * hermite_psi(k, x))
    }

    /// Finite superposition `Σ c_k |k⟩`.
    pub fn fock_superposition(coeffs: &[Complex64], basis: Basis) -> Self {
        let coeffs = coeffs.to_vec();
        Self::from_fn(basis, move |x| {
            let psi = crate::hermite::hermite_psi_upto(coeffs.len().saturating_sub(1), x);
            coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let phase = match basis {
                        Basis::Position => Complex64::new(1.0, 0.0),
                        Basis::Momentum => Complex64::new(0.0, -1.0).powu(k as u32),
                    };
                    c * phase * psi[k]
                })
                .sum()
        })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.eval)(x)
    }
}

/// Sample `√λ ψ(x_j)` on the grid. The result is not renormalized.
pub fn encode(wavefn: &Wavefunction, grid: &GridSpec) -> Result<Vec<Complex64>> {
    let scale = grid.lambda.sqrt();
    (0..grid.dim)
        .map(|j| {
            let v = wavefn.eval(grid.lambda * grid.shifted_index(j)) * scale;
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::Encoding { index: j })
            }
        })
        .collect()
}

/// Encoding of the Fock state `|k⟩` in the given basis.
pub fn encode_fock(k: usize, basis: Basis, grid: &GridSpec) -> Vec<Complex64> {
    encode(&Wavefunction::fock(FockLabel(k), basis), grid).expect("Hermite functions are finite")
}

/// `1 − ‖v‖²`, the probability mass lost to the finite sampling window.
pub fn norm_deficit(amplitudes: &[Complex64]) -> f64 {
    1.0 - amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>()
}

/// Copy of `amplitudes` scaled to unit norm (zero vectors are returned as-is).
pub fn normalized(amplitudes: &[Complex64]) -> Vec<Complex64> {
    let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm == 0.0 {
        return amplitudes.to_vec();
    }
    amplitudes.iter().map(|a| a / norm).collect()
}

/// Dense shifted QFT, `F̃[k, j] = N^{-1/2} exp(−i λ² j̃ k̃)`.
pub fn shifted_qft_matrix(grid: &GridSpec) -> DMatrix<Complex64> {
    let dim = grid.dim;
    let lam2 = grid.lambda * grid.lambda;
    let scale = 1.0 / (dim as f64).sqrt();
    DMatrix::from_fn(dim, dim, |k, j| {
        // reduce the phase modulo 2π in exact arithmetic on doubled indices:
        // 4 j̃ k̃ = (2j − N + 1)(2k − N + 1) is an odd integer product
        let a = 2 * j as i128 - dim as i128 + 1;
        let b = 2 * k as i128 - dim as i128 + 1;
        let period = 4 * dim as i128;
        let mut m = (a * b).rem_euclid(period);
        if 2 * m > period {
            m -= period;
        }
        let phase = -lam2 * m as f64 / 4.0;
        Complex64::from_polar(scale, phase)
    })
}

/// Matrix-vector product `F̃ v` (or `F̃† v`) with the dense definitional matrix.
pub fn apply_dense(matrix: &DMatrix<Complex64>, v: &[Complex64], adjoint: bool) -> Vec<Complex64> {
    let dim = v.len();
    assert_eq!(matrix.nrows(), dim);
    (0..dim)
        .map(|row| {
            (0..dim)
                .map(|col| {
                    let m = if adjoint { matrix[(col, row)].conj() } else { matrix[(row, col)] };
                    m * v[col]
                })
                .sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn indexed(m: &DMatrix<Complex64>) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..m.nrows()).flat_map(move |r| (0..m.ncols()).map(move |c| (r, c, m[(r, c)])))
    }

    fn dist(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
    }

    #[test]
    fn lambda_squared_times_dim_is_two_pi() {
        for n in 1..=20 {
            let g = GridSpec::new(n);
            assert_eq!(g.dim(), 1 << n);
            assert!((g.lambda() * g.lambda() * g.dim() as f64 - 2.0 * PI).abs() < 8.0 * f64::EPSILON);
        }
    }

    #[test]
    fn grid_positions() {
        let g = GridSpec::new(2);
        let lam = (PI / 2.0).sqrt();
        assert!((g.lambda() - lam).abs() < 1e-15);
        assert!((grid_position(0, &g).unwrap() + 1.5 * lam).abs() < 1e-15);
        assert!((grid_position(3, &g).unwrap() - 1.5 * lam).abs() < 1e-15);
        assert!((grid_position(1, &g).unwrap() + 0.5 * lam).abs() < 1e-15);
        assert!((grid_position(2, &g).unwrap() - 0.5 * lam).abs() < 1e-15);
        assert_eq!(grid_position(4, &g), Err(Error::IndexOutOfRange { index: 4, limit: 4 }));
        let g6 = GridSpec::new(6);
        for j in 0..64 {
            let a = grid_position(j, &g6).unwrap();
            let b = grid_position(63 - j, &g6).unwrap();
            assert!((a + b).abs() < 1e-14);
        }
    }

    #[test]
    fn vacuum_encoding_is_normalized() {
        let g = GridSpec::new(6);
        let v = encode_fock(0, Basis::Position, &g);
        assert!(norm_deficit(&v).abs() < 1e-10);
    }

    #[test]
    fn zero_wavefunction_encodes_to_zero() {
        let g = GridSpec::new(4);
        let v = encode(&Wavefunction::zero(Basis::Position), &g).unwrap();
        assert!(v.iter().all(|a| *a == c(0.0, 0.0)));
    }

    #[test]
    fn non_finite_sample_is_an_error() {
        let g = GridSpec::new(3);
        let bad = Wavefunction::from_fn(Basis::Position, |x| if x > 0.0 { c(f64::NAN, 0.0) } else { c(1.0, 0.0) });
        assert_eq!(encode(&bad, &g), Err(Error::Encoding { index: 4 }));
    }

    #[test]
    fn norm_deficit_shrinks_with_grid_size() {
        let small = norm_deficit(&encode_fock(10, Basis::Position, &GridSpec::new(5)));
        let large = norm_deficit(&encode_fock(10, Basis::Position, &GridSpec::new(8)));
        assert!(small.abs() > large.abs(), "{small} vs {large}");
        assert!(large.abs() < 1e-12);
    }

    #[test]
    fn two_point_qft_by_hand() {
        let g = GridSpec::new(1);
        let m = shifted_qft_matrix(&g);
        // j̃, k̃ ∈ {−½, ½}, λ² = π: phase −π j̃ k̃ = ∓π/4
        let s = 1.0 / 2f64.sqrt();
        let want = [
            [Complex64::from_polar(s, -PI / 4.0), Complex64::from_polar(s, PI / 4.0)],
            [Complex64::from_polar(s, PI / 4.0), Complex64::from_polar(s, -PI / 4.0)],
        ];
        for k in 0..2 {
            for j in 0..2 {
                assert!((m[(k, j)] - want[k][j]).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn qft_matrix_is_unitary() {
        for n in 1..=8 {
            let g = GridSpec::new(n);
            let m = shifted_qft_matrix(&g);
            let prod = m.adjoint() * &m;
            for (r, col, v) in indexed(&prod) {
                let want = if r == col { 1.0 } else { 0.0 };
                assert!((v - c(want, 0.0)).norm() < 1e-10, "n={n}");
            }
        }
    }

    #[test]
    fn reversal_conjugation_gives_adjoint() {
        let g = GridSpec::new(5);
        let m = shifted_qft_matrix(&g);
        let d = g.dim();
        for k in 0..d {
            for j in 0..d {
                let conj = m[(d - 1 - k, j)];
                assert!((conj - m[(j, k)].conj()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn qft_squared_is_parity() {
        let g = GridSpec::new(4);
        let m = shifted_qft_matrix(&g);
        let sq = &m * &m;
        let d = g.dim();
        for (r, col, v) in indexed(&sq) {
            let want = if r + col == d - 1 { 1.0 } else { 0.0 };
            assert!((v - c(want, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn vacuum_is_fourier_invariant() {
        let g = GridSpec::new(6);
        let m = shifted_qft_matrix(&g);
        let q = encode_fock(0, Basis::Position, &g);
        let p = encode_fock(0, Basis::Momentum, &g);
        let fq = apply_dense(&m, &q, false);
        assert!(dist(&fq, &p) < 1e-12);
    }

    #[test]
    fn encoding_is_linear() {
        let g = GridSpec::new(5);
        let (a, b) = (c(0.3, -1.2), c(-0.7, 0.4));
        let f = Wavefunction::fock(FockLabel(2), Basis::Position);
        let h = Wavefunction::fock(FockLabel(5), Basis::Position);
        let (f2, h2) = (f.clone(), h.clone());
        let combo = Wavefunction::from_fn(Basis::Position, move |x| a * f2.eval(x) + b * h2.eval(x));
        let lhs = encode(&combo, &g).unwrap();
        let ef = encode(&f, &g).unwrap();
        let eh = encode(&h, &g).unwrap();
        for j in 0..g.dim() {
            assert!((lhs[j] - (a * ef[j] + b * eh[j])).norm() < 1e-14);
        }
    }
}

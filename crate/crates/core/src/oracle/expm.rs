// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Sparse operators and the action of their exponentials on vectors.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Row-compressed sparse matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseOp {
    dim: usize,
    rows: Vec<Vec<(usize, Complex64)>>,
}

impl SparseOp {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, rows: vec![Vec::new(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Add `v` at `(row, col)`.
    pub fn add(&mut self, row: usize, col: usize, v: Complex64) {
        if v == Complex64::new(0.0, 0.0) {
            return;
        }
        match self.rows[row].iter_mut().find(|(c, _)| *c == col) {
            Some(e) => e.1 += v,
            None => self.rows[row].push((col, v)),
        }
    }

    pub fn scaled(mut self, s: Complex64) -> Self {
        for row in &mut self.rows {
            for e in row.iter_mut() {
                e.1 *= s;
            }
        }
        self
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, a) in row {
                out.add(c, r, a.conj());
            }
        }
        out
    }

    /// `self + s·other`.
    pub fn plus_scaled(&self, other: &Self, s: Complex64) -> Self {
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for &(c, a) in row {
                out.add(r, c, s * a);
            }
        }
        out
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for &(k, a) in row {
                for &(c, b) in &other.rows[k] {
                    out.add(r, c, a * b);
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.rows
            .iter()
            .map(|row| row.iter().map(|&(c, a)| a * v[c]).sum())
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> f64 {
        let mut cols = vec![0.0; self.dim];
        for row in &self.rows {
            for &(c, a) in row {
                cols[c] += a.norm();
            }
        }
        cols.into_iter().fold(0.0, f64::max)
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, a) in row {
                m[(r, c)] += a;
            }
        }
        m
    }
}

/// `e^{G} v` by a truncated Taylor series on `s` sub-steps with `‖G/s‖₁ ≤ 1`.
pub fn expmv(g: &SparseOp, v: &[Complex64]) -> Vec<Complex64> {
    let steps = g.norm1().ceil().max(1.0) as usize;
    let inv = 1.0 / steps as f64;
    let mut out = v.to_vec();
    for _ in 0..steps {
        let mut term = out.clone();
        let mut sum = out.clone();
        for k in 1..=64 {
            term = g.matvec(&term);
            let f = inv / k as f64;
            term.iter_mut().for_each(|t| *t *= f);
            let tn: f64 = term.iter().map(|t| t.norm_sqr()).sum::<f64>().sqrt();
            sum.iter_mut().zip(&term).for_each(|(s, t)| *s += t);
            let sn: f64 = sum.iter().map(|t| t.norm_sqr()).sum::<f64>().sqrt();
            if tn <= 1e-17 * sn.max(1e-300) {
                break;
            }
        }
        out = sum;
    }
    out
}

/// Dense `e^{G} v` by Padé scaling-and-squaring.
pub fn expmv_dense(g: &SparseOp, v: &[Complex64]) -> Vec<Complex64> {
    let e = g.to_dense().exp();
    let x = nalgebra::DVector::from_column_slice(v);
    (e * x).iter().copied().collect()
}

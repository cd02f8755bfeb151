// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Qubit simulation of hybrid oscillator-qubit (CV-DV) circuits.
//!
//! Each bosonic mode is discretized onto an `n`-qubit register by sampling its
//! position wavefunction on a symmetric grid of `N = 2^n` points with spacing
//! `λ = √(2π/N)`. Position-diagonal operations are then exact diagonal phase
//! circuits, and the shifted quantum Fourier transform switches between the
//! position and momentum encodings. Every Gaussian and conditional-Gaussian
//! gate is lowered to a short sequence of such layers.
//!
//! Crate layout:
//!
//! * [`grid`] and [`hermite`]: the discretization grid, Fock wavefunctions and
//!   the definitional shifted QFT matrix.
//! * [`circuit`]: elementary gate alphabet and compiled circuits.
//! * [`engine`]: dense statevector executor.
//! * [`compiler`]: lowering of hybrid gates to elementary circuits.
//! * [`measure`]: homodyne, heterodyne and photon-number measurement.
//! * [`oracle`]: truncated Fock-basis reference dynamics.
//! * [`errorlab`]: QFT / gate error metrics, fits and resource formulas.
//! * [`program`]: the line-oriented circuit language.

pub mod circuit;
pub mod compiler;
pub mod engine;
pub mod error;
pub mod errorlab;
pub mod grid;
pub mod hermite;
pub mod measure;
pub mod oracle;
pub mod program;

pub use num_complex::Complex64;

pub use crate::circuit::{CompiledCircuit, ElementaryGate, GateCounts, Op};
pub use crate::compiler::{compile, CdLowering, CompileOptions, HybridGate};
pub use crate::engine::{RegisterLayout, StateVector};
pub use crate::error::{Error, Result};
pub use crate::grid::{FockLabel, GridSpec, Wavefunction};
pub use crate::oracle::{FockCoeffs, FockOracle};

/// Seedable random stream used by every sampling routine.
pub type Rng = rand_chacha::ChaCha8Rng;

/// Build the crate's random stream from a 64-bit seed.
pub fn seeded_rng(seed: u64) -> Rng {
    use rand::SeedableRng;
    Rng::seed_from_u64(seed)
}

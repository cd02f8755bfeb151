// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("qubit {qubit} out of range for a {total}-qubit register")]
    QubitOutOfRange { qubit: usize, total: usize },

    #[error("gate operands must be distinct (qubit {0} repeated)")]
    DuplicateOperand(usize),

    #[error("non-finite parameter: {0}")]
    NonFinite(String),

    #[error("wavefunction sample at grid point {index} is not finite")]
    Encoding { index: usize },

    #[error("state has zero norm")]
    ZeroNorm,

    #[error("layout needs {requested} qubits, budget is {budget}")]
    QubitBudget { requested: usize, budget: usize },

    #[error("invalid register layout: {0}")]
    Layout(String),

    #[error("invalid operands: {0}")]
    InvalidOperands(String),

    #[error("Fock support too close to cutoff {cutoff} (tail weight {tail:e})")]
    Truncation { cutoff: usize, tail: f64 },

    #[error("no free ancilla qubit")]
    NoAncilla,

    #[error("i/o: {0}")]
    Io(String),

    #[error("parse: {0}")]
    Parse(String),
}

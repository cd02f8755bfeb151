// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::GridSpec;

pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Where a global qubit index lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// Bit `offset` (weight `2^offset`) of mode register `mode`.
    Mode { mode: usize, offset: usize },
    /// Bare qubit `index`.
    Dv { index: usize },
}

/// `m` mode registers of `n` qubits followed by `a` bare qubits.
///
/// Mode `i`, bit `r` is global qubit `i·n + r`; bare qubit `d` is `m·n + d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterLayout {
    modes: usize,
    n: usize,
    dv: usize,
    max_qubits: usize,
}

impl RegisterLayout {
    pub fn new(modes: usize, n: usize, dv: usize) -> Result<Self> {
        Self::with_max_qubits(modes, n, dv, DEFAULT_MAX_QUBITS)
    }

    pub fn with_max_qubits(modes: usize, n: usize, dv: usize, max_qubits: usize) -> Result<Self> {
        if modes > 0 && n == 0 {
            return Err(Error::Layout("modes need at least one qubit each".into()));
        }
        let total = modes
            .checked_mul(n)
            .and_then(|x| x.checked_add(dv))
            .ok_or_else(|| Error::Layout("register size overflows".into()))?;
        if total > max_qubits {
            return Err(Error::QubitBudget { requested: total, budget: max_qubits });
        }
        if total == 0 {
            return Err(Error::Layout("empty register".into()));
        }
        Ok(Self { modes, n, dv, max_qubits })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn qubits_per_mode(&self) -> usize {
        self.n
    }

    pub fn dv_qubits(&self) -> usize {
        self.dv
    }

    pub fn max_qubits(&self) -> usize {
        self.max_qubits
    }

    pub fn total_qubits(&self) -> usize {
        self.modes * self.n + self.dv
    }

    pub fn dim(&self) -> usize {
        1usize << self.total_qubits()
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.n)
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < self.modes {
            Ok(())
        } else {
            Err(Error::Layout(format!("mode {mode} not declared ({} modes)", self.modes)))
        }
    }

    /// Global qubits of a mode register, least significant first.
    pub fn mode_qubits(&self, mode: usize) -> Result<Vec<usize>> {
        self.check_mode(mode)?;
        Ok((0..self.n).map(|r| mode * self.n + r).collect())
    }

    pub fn dv_qubit(&self, index: usize) -> Result<usize> {
        if index < self.dv {
            Ok(self.modes * self.n + index)
        } else {
            Err(Error::Layout(format!("qubit q{index} not declared ({} bare qubits)", self.dv)))
        }
    }

    pub fn locate(&self, qubit: usize) -> Result<Slot> {
        let split = self.modes * self.n;
        if qubit < split {
            Ok(Slot::Mode { mode: qubit / self.n, offset: qubit % self.n })
        } else if qubit < self.total_qubits() {
            Ok(Slot::Dv { index: qubit - split })
        } else {
            Err(Error::QubitOutOfRange { qubit, total: self.total_qubits() })
        }
    }

    /// Layout with one more mode register inserted after the existing ones.
    pub fn with_extra_mode(&self) -> Result<Self> {
        Self::with_max_qubits(self.modes + 1, self.n, self.dv, self.max_qubits)
    }

    /// Layout with mode `mode` removed.
    pub fn without_mode(&self, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        Self::with_max_qubits(self.modes - 1, self.n, self.dv, self.max_qubits)
    }
}

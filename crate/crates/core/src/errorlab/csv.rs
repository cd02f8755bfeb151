// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV tables. Column orders are fixed:
//!
//! * QFT sweep: `n,k,epsilon`
//! * gate sweep: `gate,n,k,epsilon`
//! * advantage: `n,gamma_cutoff,tau_ratio` (empty `gamma_cutoff` when no level
//!   meets the target)

use std::io::{Read, Write};

use super::{AdvantageRow, GateErrorPoint, SweepPoint};
use crate::error::{Error, Result};

fn write_rows<W: Write, T: serde::Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = ::csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

pub fn write_sweep<W: Write>(out: W, rows: &[SweepPoint]) -> Result<()> {
    write_rows(out, rows)
}

pub fn write_gate_sweep<W: Write>(out: W, rows: &[GateErrorPoint]) -> Result<()> {
    write_rows(out, rows)
}

pub fn write_advantage<W: Write>(out: W, rows: &[AdvantageRow]) -> Result<()> {
    write_rows(out, rows)
}

/// Parse a QFT sweep table.
pub fn read_sweep<R: Read>(input: R) -> Result<Vec<SweepPoint>> {
    ::csv::Reader::from_reader(input)
        .deserialize()
        .map(|r| r.map_err(|e: ::csv::Error| Error::Parse(e.to_string())))
        .collect()
}

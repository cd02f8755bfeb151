// Copyright 2026 The cvdv Authors
// SPDX-License-Identifier: Apache-2.0

//! Lowering of hybrid oscillator-qubit gates to elementary circuits.
//!
//! Each gate is first written as a list of [`Layer`]s: position-diagonal
//! phases (optionally conditioned on a bare qubit's Pauli-Z), shifted QFTs,
//! parities and register swaps. The layer list is then lowered gate by gate.
//! Momentum-diagonal phases appear as a position phase between a QFT and its
//! inverse.

pub mod lower;
pub mod shear;

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circuit::{CompiledCircuit, ElementaryGate};
use crate::engine::{CondForm, RegisterLayout};
use crate::error::{Error, Result};
use crate::grid::GridSpec;

pub use self::shear::ShearCoefficients;

/// A CV or hybrid gate. Modes are mode-register indices; `control` is the
/// index of a bare qubit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate")]
pub enum HybridGate {
    /// `D(α) = e^{αâ† − α*â}`.
    D { mode: usize, alpha: Complex64 },
    /// `R(θ) = e^{−iθ(n̂ + ½)}`.
    R { mode: usize, theta: f64 },
    /// `S(r) = e^{(r/2)(â² − â†²)}`.
    S { mode: usize, r: f64 },
    /// `BS(θ) = e^{−i(θ/2)(â†b̂ + âb̂†)}`.
    BS { a: usize, b: usize, theta: f64 },
    /// `|0⟩⟨0| ⊗ D(α) + |1⟩⟨1| ⊗ D(−α)`.
    CD { control: usize, mode: usize, alpha: Complex64 },
    /// `e^{−iθZ(n̂ + ½)}`.
    CR { control: usize, mode: usize, theta: f64 },
    /// `e^{(r/2)Z(â² − â†²)}`.
    CS { control: usize, mode: usize, r: f64 },
    /// `e^{−i(θ/2)Z(â†b̂ + âb̂†)}`.
    CBS { control: usize, a: usize, b: usize, theta: f64 },
    /// Shifted QFT on one mode.
    Fourier { mode: usize, inverse: bool },
    Parity { mode: usize },
    CondParity { control: usize, mode: usize },
    ModeSwap { a: usize, b: usize },
    /// `e^{itq̂}`.
    PhaseQ { mode: usize, t: f64 },
    /// `e^{itq̂_a q̂_b}` (`e^{itq̂²}` when `a == b`).
    PhaseQQ { a: usize, b: usize, t: f64 },
    /// `e^{itZ·f(q̂)}` for one of the conditional forms.
    CondPhase { control: usize, form: CondPhaseForm, t: f64 },
}

/// Mode-level counterpart of [`CondForm`] for use in [`HybridGate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CondPhaseForm {
    Q { mode: usize },
    Qsq { mode: usize },
    QQ { a: usize, b: usize },
}

impl HybridGate {
    pub fn name(&self) -> &'static str {
        match self {
            Self::D { .. } => "D",
            Self::R { .. } => "R",
            Self::S { .. } => "S",
            Self::BS { .. } => "BS",
            Self::CD { .. } => "CD",
            Self::CR { .. } => "CR",
            Self::CS { .. } => "CS",
            Self::CBS { .. } => "CBS",
            Self::Fourier { .. } => "F",
            Self::Parity { .. } => "P",
            Self::CondParity { .. } => "CP",
            Self::ModeSwap { .. } => "SWAP",
            Self::PhaseQ { .. } => "PQ",
            Self::PhaseQQ { .. } => "PQQ",
            Self::CondPhase { .. } => "CPQ",
        }
    }

    pub fn control(&self) -> Option<usize> {
        match *self {
            Self::CD { control, .. }
            | Self::CR { control, .. }
            | Self::CS { control, .. }
            | Self::CBS { control, .. }
            | Self::CondParity { control, .. }
            | Self::CondPhase { control, .. } => Some(control),
            _ => None,
        }
    }

    pub fn modes(&self) -> Vec<usize> {
        match *self {
            Self::D { mode, .. }
            | Self::R { mode, .. }
            | Self::S { mode, .. }
            | Self::CD { mode, .. }
            | Self::CR { mode, .. }
            | Self::CS { mode, .. }
            | Self::Fourier { mode, .. }
            | Self::Parity { mode }
            | Self::CondParity { mode, .. }
            | Self::PhaseQ { mode, .. } => vec![mode],
            Self::BS { a, b, .. } | Self::CBS { a, b, .. } | Self::ModeSwap { a, b } => vec![a, b],
            Self::PhaseQQ { a, b, .. } => {
                if a == b {
                    vec![a]
                } else {
                    vec![a, b]
                }
            }
            Self::CondPhase { form, .. } => match form {
                CondPhaseForm::Q { mode } | CondPhaseForm::Qsq { mode } => vec![mode],
                CondPhaseForm::QQ { a, b } => vec![a, b],
            },
        }
    }

    fn params(&self) -> Vec<f64> {
        match *self {
            Self::D { alpha, .. } | Self::CD { alpha, .. } => vec![alpha.re, alpha.im],
            Self::R { theta, .. } | Self::CR { theta, .. } | Self::BS { theta, .. } | Self::CBS { theta, .. } => {
                vec![theta]
            }
            Self::S { r, .. } | Self::CS { r, .. } => vec![r],
            Self::PhaseQ { t, .. } | Self::PhaseQQ { t, .. } | Self::CondPhase { t, .. } => vec![t],
            _ => vec![],
        }
    }

    /// The same gate with its continuous parameter negated (the `|1⟩` branch
    /// of a conditional gate). Parameterless gates are returned unchanged.
    pub fn negated(&self) -> Self {
        let mut g = self.clone();
        match &mut g {
            Self::D { alpha, .. } | Self::CD { alpha, .. } => *alpha = -*alpha,
            Self::R { theta, .. } | Self::CR { theta, .. } | Self::BS { theta, .. } | Self::CBS { theta, .. } => {
                *theta = -*theta
            }
            Self::S { r, .. } | Self::CS { r, .. } => *r = -*r,
            Self::PhaseQ { t, .. } | Self::PhaseQQ { t, .. } | Self::CondPhase { t, .. } => *t = -*t,
            _ => {}
        }
        g
    }

    /// Unconditional gate acting on the control branch with Z eigenvalue
    /// `+1` (`bit = false`) or `−1` (`bit = true`). `None` for gates without
    /// a control.
    pub fn branch(&self, bit: bool) -> Option<HybridGate> {
        let g = if bit { self.negated() } else { self.clone() };
        Some(match g {
            Self::CD { mode, alpha, .. } => Self::D { mode, alpha },
            Self::CR { mode, theta, .. } => Self::R { mode, theta },
            Self::CS { mode, r, .. } => Self::S { mode, r },
            Self::CBS { a, b, theta, .. } => Self::BS { a, b, theta },
            Self::CondPhase { form, t, .. } => match form {
                CondPhaseForm::Q { mode } => Self::PhaseQ { mode, t },
                CondPhaseForm::Qsq { mode } => Self::PhaseQQ { a: mode, b: mode, t },
                CondPhaseForm::QQ { a, b } => Self::PhaseQQ { a, b, t },
            },
            Self::CondParity { mode, .. } => {
                if bit {
                    Self::Parity { mode }
                } else {
                    Self::PhaseQ { mode, t: 0.0 }
                }
            }
            _ => return None,
        })
    }

    /// Operand and parameter checks against a layout.
    pub fn validate(&self, layout: &RegisterLayout) -> Result<()> {
        for p in self.params() {
            if !p.is_finite() {
                return Err(Error::NonFinite(format!("{} parameter", self.name())));
            }
        }
        for m in self.modes() {
            layout.check_mode(m)?;
        }
        if let Some(c) = self.control() {
            layout.dv_qubit(c)?;
        }
        match *self {
            Self::BS { a, b, .. } | Self::CBS { a, b, .. } | Self::ModeSwap { a, b } if a == b => Err(
                Error::InvalidOperands(format!("{} needs two distinct modes", self.name())),
            ),
            Self::CondPhase { form: CondPhaseForm::QQ { a, b }, .. } if a == b => {
                Err(Error::InvalidOperands("conditional QQ phase needs two distinct modes".into()))
            }
            _ => Ok(()),
        }
    }
}

/// How a conditional displacement is lowered.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum CdLowering {
    /// Conditional parities around an unconditional displacement.
    #[default]
    Parity,
    /// Conditional position phases on both quadratures.
    ConditionalPhase,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompileOptions {
    pub cd_lowering: CdLowering,
}

/// Intermediate representation of a lowered gate. `control` fields hold bare
/// qubit indices; a conditional layer applies `+t` on the control's `|0⟩`
/// branch and `−t` on `|1⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Layer {
    /// `e^{itq̂}`.
    PhaseQ { mode: usize, t: f64, control: Option<usize> },
    /// `e^{itq̂²}`.
    PhaseQsq { mode: usize, t: f64, control: Option<usize> },
    /// `e^{itq̂_a q̂_b}`, `a ≠ b`.
    PhaseQQ { a: usize, b: usize, t: f64, control: Option<usize> },
    /// Shifted QFT, acting as `e^{−i(π/2)n̂}` (its adjoint when `inverse`).
    Qft { mode: usize, inverse: bool },
    /// `e^{iπn̂}` (on the control's `|1⟩` branch when controlled).
    Parity { mode: usize, control: Option<usize> },
    Swap { a: usize, b: usize },
    /// `Rz(angle)` on a bare qubit.
    ControlRz { control: usize, angle: f64 },
    GlobalPhase(f64),
}

impl Layer {
    fn is_identity(&self) -> bool {
        match *self {
            Self::PhaseQ { t, .. } | Self::PhaseQsq { t, .. } | Self::PhaseQQ { t, .. } => t == 0.0,
            Self::ControlRz { angle, .. } => angle == 0.0,
            Self::GlobalPhase(p) => p == 0.0,
            _ => false,
        }
    }

    fn touches_mode(&self, m: usize) -> bool {
        match *self {
            Self::PhaseQ { mode, .. } | Self::PhaseQsq { mode, .. } | Self::Qft { mode, .. } | Self::Parity { mode, .. } => {
                mode == m
            }
            Self::PhaseQQ { a, b, .. } | Self::Swap { a, b } => a == m || b == m,
            Self::ControlRz { .. } | Self::GlobalPhase(_) => false,
        }
    }
}

/// Lattice used by [`split_angle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AngleFamily {
    /// `θ₀ ∈ (π/2)ℤ`, `|δ| ≤ π/4`.
    Rotation,
    /// `θ₀ ∈ πℤ`, `|δ| ≤ π/2`.
    Beamsplitter,
}

/// Split `θ = θ₀ + δ` with `θ₀ = m·step` on the family's lattice and `|δ|`
/// at most half a step; ties go to the smaller `|θ₀|`. Returns `(m, θ₀, δ)`.
pub fn split_angle(theta: f64, family: AngleFamily) -> (i64, f64, f64) {
    let step = match family {
        AngleFamily::Rotation => FRAC_PI_2,
        AngleFamily::Beamsplitter => PI,
    };
    let x = theta / step;
    let mut m = x.round();
    if (x - x.trunc()).abs() == 0.5 {
        m = x.trunc();
    }
    let theta0 = m * step;
    (m as i64, theta0, theta - theta0)
}

fn qft_power(mode: usize, m: i64, out: &mut Vec<Layer>) {
    match m.rem_euclid(4) {
        1 => out.push(Layer::Qft { mode, inverse: false }),
        2 => out.push(Layer::Parity { mode, control: None }),
        3 => out.push(Layer::Qft { mode, inverse: true }),
        _ => {}
    }
}

fn displacement_layers(mode: usize, alpha: Complex64, control: Option<usize>) -> Vec<Layer> {
    vec![
        Layer::Qft { mode, inverse: false },
        Layer::PhaseQ { mode, t: -SQRT_2 * alpha.re, control },
        Layer::Qft { mode, inverse: true },
        Layer::PhaseQ { mode, t: SQRT_2 * alpha.im, control },
        Layer::GlobalPhase(-alpha.im * alpha.re),
    ]
}

fn rotation_small(mode: usize, delta: f64, control: Option<usize>) -> Vec<Layer> {
    let t = -(delta / 2.0).tan() / 2.0;
    vec![
        Layer::PhaseQsq { mode, t, control },
        Layer::Qft { mode, inverse: false },
        Layer::PhaseQsq { mode, t: -delta.sin() / 2.0, control },
        Layer::Qft { mode, inverse: true },
        Layer::PhaseQsq { mode, t, control },
    ]
}

fn beamsplitter_small(a: usize, b: usize, delta: f64, control: Option<usize>) -> Vec<Layer> {
    let t = -(delta / 4.0).tan();
    vec![
        Layer::PhaseQQ { a, b, t, control },
        Layer::Qft { mode: a, inverse: false },
        Layer::Qft { mode: b, inverse: false },
        Layer::PhaseQQ { a, b, t: -(delta / 2.0).sin(), control },
        Layer::Qft { mode: a, inverse: true },
        Layer::Qft { mode: b, inverse: true },
        Layer::PhaseQQ { a, b, t, control },
    ]
}

fn beamsplitter_large(a: usize, b: usize, m: i64, control: Option<usize>, out: &mut Vec<Layer>) {
    let k = m.rem_euclid(4);
    if k % 2 == 1 {
        out.push(Layer::Swap { a, b });
        if let Some(c) = control {
            out.push(Layer::Parity { mode: a, control: Some(c) });
            out.push(Layer::Parity { mode: b, control: Some(c) });
        }
    }
    qft_power(a, k, out);
    qft_power(b, k, out);
}

/// Shear layers `(p̂², q̂², p̂², q̂²)` with coefficients `(c₁, c₂, c₃, c₄)/2`.
fn squeeze_layers(mode: usize, mu: [f64; 4], cond: Option<(usize, [f64; 4])>) -> Vec<Layer> {
    let mut out = Vec::new();
    for (i, &m) in mu.iter().enumerate() {
        let momentum = i % 2 == 0;
        if momentum {
            out.push(Layer::Qft { mode, inverse: false });
        }
        out.push(Layer::PhaseQsq { mode, t: m / 2.0, control: None });
        if let Some((c, b)) = cond {
            out.push(Layer::PhaseQsq { mode, t: b[i] / 2.0, control: Some(c) });
        }
        if momentum {
            out.push(Layer::Qft { mode, inverse: true });
        }
    }
    out
}

/// Layer sequence of a gate, before identity elision.
pub fn gate_layers(gate: &HybridGate, opts: &CompileOptions) -> Vec<Layer> {
    match *gate {
        HybridGate::D { mode, alpha } => displacement_layers(mode, alpha, None),
        HybridGate::CD { control, mode, alpha } => match opts.cd_lowering {
            CdLowering::Parity => {
                let mut v = vec![Layer::Parity { mode, control: Some(control) }];
                v.extend(displacement_layers(mode, alpha, None));
                v.push(Layer::Parity { mode, control: Some(control) });
                v
            }
            CdLowering::ConditionalPhase => displacement_layers(mode, alpha, Some(control)),
        },
        HybridGate::R { mode, theta } => {
            let (m, _, delta) = split_angle(theta, AngleFamily::Rotation);
            let mut v = rotation_small(mode, delta, None);
            qft_power(mode, m, &mut v);
            v.push(Layer::GlobalPhase(-(m as f64) * PI / 4.0));
            v
        }
        HybridGate::CR { control, mode, theta } => {
            let (m, _, delta) = split_angle(theta, AngleFamily::Rotation);
            let mut v = rotation_small(mode, delta, Some(control));
            if m.rem_euclid(2) == 1 {
                v.push(Layer::Parity { mode, control: Some(control) });
            }
            qft_power(mode, m, &mut v);
            v.push(Layer::ControlRz { control, angle: m as f64 * FRAC_PI_2 });
            v
        }
        HybridGate::S { mode, r } => squeeze_layers(mode, ShearCoefficients::new(r).as_array(), None),
        HybridGate::CS { control, mode, r } => {
            let plus = ShearCoefficients::new(r).as_array();
            let minus = ShearCoefficients::new(-r).as_array();
            let even: [f64; 4] = std::array::from_fn(|i| (plus[i] + minus[i]) / 2.0);
            let odd: [f64; 4] = std::array::from_fn(|i| (plus[i] - minus[i]) / 2.0);
            squeeze_layers(mode, even, Some((control, odd)))
        }
        HybridGate::BS { a, b, theta } => {
            let (m, _, delta) = split_angle(theta, AngleFamily::Beamsplitter);
            let mut v = beamsplitter_small(a, b, delta, None);
            beamsplitter_large(a, b, m, None, &mut v);
            v
        }
        HybridGate::CBS { control, a, b, theta } => {
            let (m, _, delta) = split_angle(theta, AngleFamily::Beamsplitter);
            let mut v = beamsplitter_small(a, b, delta, Some(control));
            beamsplitter_large(a, b, m, Some(control), &mut v);
            v
        }
        HybridGate::Fourier { mode, inverse } => vec![Layer::Qft { mode, inverse }],
        HybridGate::Parity { mode } => vec![Layer::Parity { mode, control: None }],
        HybridGate::CondParity { control, mode } => vec![Layer::Parity { mode, control: Some(control) }],
        HybridGate::ModeSwap { a, b } => vec![Layer::Swap { a, b }],
        HybridGate::PhaseQ { mode, t } => vec![Layer::PhaseQ { mode, t, control: None }],
        HybridGate::PhaseQQ { a, b, t } => {
            if a == b {
                vec![Layer::PhaseQsq { mode: a, t, control: None }]
            } else {
                vec![Layer::PhaseQQ { a, b, t, control: None }]
            }
        }
        HybridGate::CondPhase { control, form, t } => vec![match form {
            CondPhaseForm::Q { mode } => Layer::PhaseQ { mode, t, control: Some(control) },
            CondPhaseForm::Qsq { mode } => Layer::PhaseQsq { mode, t, control: Some(control) },
            CondPhaseForm::QQ { a, b } => Layer::PhaseQQ { a, b, t, control: Some(control) },
        }],
    }
}

/// Drop identity layers and cancel each QFT against an earlier inverse QFT on
/// the same mode when only layers on other modes lie between them.
pub fn elide(layers: &[Layer]) -> Vec<Layer> {
    let mut out: Vec<Layer> = Vec::with_capacity(layers.len());
    for layer in layers.iter().filter(|l| !l.is_identity()) {
        if let Layer::Qft { mode, inverse } = *layer {
            let partner = out
                .iter()
                .rposition(|l| l.touches_mode(mode))
                .filter(|&i| out[i] == Layer::Qft { mode, inverse: !inverse });
            if let Some(i) = partner {
                out.remove(i);
                continue;
            }
        }
        out.push(*layer);
    }
    out
}

/// Emit elementary gates for a layer list. Control rotations commute with
/// every other layer, so all of them are merged into one `Rz` per control
/// at the end.
pub fn lower_layers(layers: &[Layer], layout: &RegisterLayout) -> Result<CompiledCircuit> {
    let lam = if layout.modes() > 0 { layout.grid().lambda() } else { 0.0 };
    let mut out = CompiledCircuit::new();
    let mut control_rz: Vec<(usize, f64)> = Vec::new();
    let mut add_rz = |q: usize, a: f64| match control_rz.iter_mut().find(|(c, _)| *c == q) {
        Some(e) => e.1 += a,
        None => control_rz.push((q, a)),
    };
    for layer in layers {
        match *layer {
            Layer::PhaseQ { mode, t, control } => {
                let qs = layout.mode_qubits(mode)?;
                out.extend(match control {
                    None => lower::phase_q(&qs, lam, t),
                    Some(c) => lower::cond_phase_q(layout.dv_qubit(c)?, &qs, lam, t),
                });
            }
            Layer::PhaseQsq { mode, t, control } => {
                let qs = layout.mode_qubits(mode)?;
                match control {
                    None => out.extend(lower::phase_qsq(&qs, lam, t)),
                    Some(c) => {
                        let cq = layout.dv_qubit(c)?;
                        let (body, rz) = lower::cond_phase_qsq_body(cq, &qs, lam, t);
                        out.extend(body);
                        add_rz(cq, rz);
                    }
                }
            }
            Layer::PhaseQQ { a, b, t, control } => {
                let (qa, qb) = (layout.mode_qubits(a)?, layout.mode_qubits(b)?);
                out.extend(match control {
                    None => lower::phase_qq(&qa, &qb, lam, t),
                    Some(c) => lower::cond_phase_qq(layout.dv_qubit(c)?, &qa, &qb, lam, t),
                });
            }
            Layer::Qft { mode, inverse } => out.push_qft(layout.mode_qubits(mode)?, inverse),
            Layer::Parity { mode, control } => {
                let ctl = control.map(|c| layout.dv_qubit(c)).transpose()?;
                out.extend(lower::parity(&layout.mode_qubits(mode)?, ctl));
            }
            Layer::Swap { a, b } => out.extend(lower::swap_registers(&layout.mode_qubits(a)?, &layout.mode_qubits(b)?)),
            Layer::ControlRz { control, angle } => add_rz(layout.dv_qubit(control)?, angle),
            Layer::GlobalPhase(p) => out.global_phase += p,
        }
    }
    for (q, angle) in control_rz {
        if angle != 0.0 {
            out.push(ElementaryGate::Rz { qubit: q, angle });
        }
    }
    Ok(out)
}

/// Compile one gate for a layout.
pub fn compile(gate: &HybridGate, layout: &RegisterLayout, opts: &CompileOptions) -> Result<CompiledCircuit> {
    gate.validate(layout)?;
    lower_layers(&elide(&gate_layers(gate, opts)), layout)
}

/// Layers of a gate after identity elision.
pub fn compiled_layers(gate: &HybridGate, opts: &CompileOptions) -> Vec<Layer> {
    elide(&gate_layers(gate, opts))
}

/// Convert a [`CondPhaseForm`] to the engine's qubit-level [`CondForm`].
pub fn engine_form(form: CondPhaseForm) -> CondForm {
    match form {
        CondPhaseForm::Q { mode } => CondForm::Q(mode),
        CondPhaseForm::Qsq { mode } => CondForm::Qsq(mode),
        CondPhaseForm::QQ { a, b } => CondForm::QQ(a, b),
    }
}

fn single_mode(grid: &GridSpec, dv: usize) -> RegisterLayout {
    RegisterLayout::with_max_qubits(1, grid.qubits(), dv, usize::MAX).expect("valid layout")
}

fn two_mode(grid: &GridSpec, dv: usize) -> RegisterLayout {
    RegisterLayout::with_max_qubits(2, grid.qubits(), dv, usize::MAX).expect("valid layout")
}

/// `D(α)` on a single-mode register.
pub fn compile_displacement(alpha: Complex64, grid: &GridSpec) -> CompiledCircuit {
    compile(&HybridGate::D { mode: 0, alpha }, &single_mode(grid, 0), &CompileOptions::default()).expect("valid gate")
}

/// `R(θ)` on a single-mode register.
pub fn compile_rotation(theta: f64, grid: &GridSpec) -> CompiledCircuit {
    compile(&HybridGate::R { mode: 0, theta }, &single_mode(grid, 0), &CompileOptions::default()).expect("valid gate")
}

/// `S(r)` on a single-mode register.
pub fn compile_squeezing(r: f64, grid: &GridSpec) -> CompiledCircuit {
    compile(&HybridGate::S { mode: 0, r }, &single_mode(grid, 0), &CompileOptions::default()).expect("valid gate")
}

/// `BS(θ)` on a two-mode register.
pub fn compile_beamsplitter(theta: f64, grid: &GridSpec) -> CompiledCircuit {
    compile(&HybridGate::BS { a: 0, b: 1, theta }, &two_mode(grid, 0), &CompileOptions::default()).expect("valid gate")
}

/// A conditional gate controlled by bare qubit 0 of a one- or two-mode
/// register (two modes for `CBS`).
pub fn compile_conditional(gate: &HybridGate, grid: &GridSpec, opts: &CompileOptions) -> Result<CompiledCircuit> {
    if gate.control().is_none() {
        return Err(Error::InvalidOperands(format!("{} is not a conditional gate", gate.name())));
    }
    let layout = if gate.modes().len() == 2 { two_mode(grid, 1) } else { single_mode(grid, 1) };
    compile(gate, &layout, opts)
}

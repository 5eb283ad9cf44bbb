use serde::{Deserialize, Serialize};

use super::{Statevector, C64};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    /// `RY(θ) = exp(-iθY/2)`.
    Ry,
    /// `U3(θ, φ, λ) = RZ(φ)·RY(θ)·RZ(λ)` up to the global phase `e^{i(φ+λ)/2}`.
    U3,
    /// X on the target controlled by exactly one qubit.
    Cnot,
}

impl GateKind {
    pub fn num_params(self) -> usize {
        match self {
            GateKind::H | GateKind::X | GateKind::Cnot => 0,
            GateKind::Ry => 1,
            GateKind::U3 => 3,
        }
    }
}

/// One gate of a circuit. Controls always trigger on `|1⟩`; a 0-control is
/// expressed by conjugating the control qubit with X.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateOp {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
    pub params: Vec<f64>,
}

impl GateOp {
    fn single(kind: GateKind, target: usize, params: Vec<f64>) -> Self {
        Self {
            kind,
            targets: vec![target],
            controls: Vec::new(),
            params,
        }
    }

    pub fn h(target: usize) -> Self {
        Self::single(GateKind::H, target, Vec::new())
    }

    pub fn x(target: usize) -> Self {
        Self::single(GateKind::X, target, Vec::new())
    }

    pub fn ry(target: usize, theta: f64) -> Self {
        Self::single(GateKind::Ry, target, vec![theta])
    }

    /// RY on `target` applied only where every qubit in `controls` is 1.
    pub fn controlled_ry(controls: Vec<usize>, target: usize, theta: f64) -> Self {
        Self {
            kind: GateKind::Ry,
            targets: vec![target],
            controls,
            params: vec![theta],
        }
    }

    pub fn u3(target: usize, theta: f64, phi: f64, lambda: f64) -> Self {
        Self::single(GateKind::U3, target, vec![theta, phi, lambda])
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self {
            kind: GateKind::Cnot,
            targets: vec![target],
            controls: vec![control],
            params: Vec::new(),
        }
    }

    /// The gate undoing `self`.
    pub fn inverse(&self) -> Self {
        let params = match self.kind {
            GateKind::H | GateKind::X | GateKind::Cnot => Vec::new(),
            GateKind::Ry => vec![-self.params[0]],
            GateKind::U3 => vec![-self.params[0], -self.params[2], -self.params[1]],
        };
        Self {
            params,
            ..self.clone()
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if self.targets.len() != 1 {
            return Err(Error::InvalidGate(format!(
                "{:?} takes exactly one target, got {}",
                self.kind,
                self.targets.len()
            )));
        }
        if self.kind == GateKind::Cnot && self.controls.len() != 1 {
            return Err(Error::InvalidGate(format!(
                "CNOT takes exactly one control, got {}",
                self.controls.len()
            )));
        }
        if self.params.len() != self.kind.num_params() {
            return Err(Error::InvalidGate(format!(
                "{:?} takes {} parameters, got {}",
                self.kind,
                self.kind.num_params(),
                self.params.len()
            )));
        }
        let mut seen = 0u128;
        for &q in self.targets.iter().chain(&self.controls) {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
            if seen & (1 << q) != 0 {
                return Err(Error::OverlappingQubits(q));
            }
            seen |= 1 << q;
        }
        Ok(())
    }

    pub(crate) fn control_mask(&self) -> usize {
        self.controls.iter().fold(0, |m, &c| m | (1 << c))
    }
}

type Mat2 = [[C64; 2]; 2];

pub(crate) fn ry_matrix(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [C64::new(c, 0.0), C64::new(-s, 0.0)],
        [C64::new(s, 0.0), C64::new(c, 0.0)],
    ]
}

pub(crate) fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    [
        [C64::new(c, 0.0), -C64::from_polar(s, lambda)],
        [C64::from_polar(s, phi), C64::from_polar(c, phi + lambda)],
    ]
}

fn h_matrix() -> Mat2 {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    [
        [C64::new(r, 0.0), C64::new(r, 0.0)],
        [C64::new(r, 0.0), C64::new(-r, 0.0)],
    ]
}

/// Applies `m` to the target bit of every amplitude pair whose indices have
/// all bits of `ctrl_mask` set.
pub(crate) fn apply_matrix(amps: &mut [C64], target: usize, ctrl_mask: usize, m: &Mat2) {
    let tbit = 1usize << target;
    for i in 0..amps.len() {
        if i & tbit != 0 || i & ctrl_mask != ctrl_mask {
            continue;
        }
        let j = i | tbit;
        let (a0, a1) = (amps[i], amps[j]);
        amps[i] = m[0][0] * a0 + m[0][1] * a1;
        amps[j] = m[1][0] * a0 + m[1][1] * a1;
    }
}

fn apply_flip(amps: &mut [C64], target: usize, ctrl_mask: usize) {
    let tbit = 1usize << target;
    for i in 0..amps.len() {
        if i & tbit == 0 && i & ctrl_mask == ctrl_mask {
            amps.swap(i, i | tbit);
        }
    }
}

/// Applies an already-validated gate with explicit angles.
pub(crate) fn apply_unchecked(amps: &mut [C64], op: &GateOp, params: &[f64]) {
    let target = op.targets[0];
    let mask = op.control_mask();
    match op.kind {
        GateKind::H => apply_matrix(amps, target, mask, &h_matrix()),
        GateKind::X | GateKind::Cnot => apply_flip(amps, target, mask),
        GateKind::Ry => apply_matrix(amps, target, mask, &ry_matrix(params[0])),
        GateKind::U3 => apply_matrix(
            amps,
            target,
            mask,
            &u3_matrix(params[0], params[1], params[2]),
        ),
    }
}

/// Applies `op` to `state` in place.
pub fn apply_gate(state: &mut Statevector, op: &GateOp) -> Result<()> {
    op.validate(state.num_qubits())?;
    apply_unchecked(state.amplitudes_mut(), op, &op.params);
    Ok(())
}

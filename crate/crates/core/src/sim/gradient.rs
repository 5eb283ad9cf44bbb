//! Two-term parameter-shift gradients.
//!
//! Every trainable slot sits on an uncontrolled RY or U3 angle. Each such
//! angle enters as `exp(-iθP/2)` for a Pauli `P` (the three U3 angles are the
//! RZ·RY·RZ factors, up to a global phase), so
//! `∂f/∂θ = [f(θ + π/2) − f(θ − π/2)] / 2` exactly.

use std::f64::consts::FRAC_PI_2;

use super::{CircuitProgram, GateKind, Observable, Statevector};
use crate::{Error, Result};

fn check_shiftable(prog: &CircuitProgram) -> Result<()> {
    for (slot, s) in prog.param_slots().iter().enumerate() {
        let op = &prog.ops()[s.op];
        let rotation = matches!(op.kind, GateKind::Ry | GateKind::U3);
        if !rotation || !op.controls.is_empty() {
            return Err(Error::NotShiftable { slot });
        }
    }
    Ok(())
}

/// Returns `(f(params), ∇f(params))` for `f = ⟨obs⟩` after running `prog` on
/// `input`.
///
/// The state before each op is cached so a shifted evaluation only replays
/// the suffix of the circuit starting at the shifted gate.
pub fn expectation_and_gradient(
    prog: &CircuitProgram,
    params: &[f64],
    input: &Statevector,
    obs: &Observable,
) -> Result<(f64, Vec<f64>)> {
    prog.check_params(params)?;
    prog.check_state(input)?;
    obs.validate(prog.num_qubits())?;
    check_shiftable(prog)?;

    let slots = prog.param_slots();
    let first_op = slots.iter().map(|s| s.op).min().unwrap_or(prog.ops().len());

    // prefix[k - first_op] = state before op k
    let mut prefix = Vec::with_capacity(prog.ops().len() - first_op);
    let mut state = input.clone();
    prog.apply_from_range(&mut state, params, 0, first_op);
    for k in first_op..prog.ops().len() {
        prefix.push(state.clone());
        prog.apply_from_range(&mut state, params, k, k + 1);
    }
    let value = obs.expectation(&state)?;

    let mut grad = Vec::with_capacity(slots.len());
    let mut shifted = params.to_vec();
    for (j, s) in slots.iter().enumerate() {
        let mut f = [0.0; 2];
        for (sign, out) in [1.0, -1.0].into_iter().zip(f.iter_mut()) {
            shifted[j] = params[j] + sign * FRAC_PI_2;
            let mut st = prefix[s.op - first_op].clone();
            prog.apply_from(&mut st, &shifted, s.op);
            *out = obs.expectation(&st)?;
        }
        shifted[j] = params[j];
        grad.push((f[0] - f[1]) / 2.0);
    }
    Ok((value, grad))
}

pub fn parameter_shift_gradient(
    prog: &CircuitProgram,
    params: &[f64],
    input: &Statevector,
    obs: &Observable,
) -> Result<Vec<f64>> {
    expectation_and_gradient(prog, params, input, obs).map(|(_, g)| g)
}

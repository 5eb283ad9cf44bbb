use serde::{Deserialize, Serialize};

use super::gate::apply_unchecked;
use super::{GateOp, Statevector};
use crate::{Error, Result};

/// Location of a trainable parameter: angle `angle` of operation `op`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSlot {
    pub op: usize,
    pub angle: usize,
}

/// An ordered gate list on a fixed register, some of whose angles are
/// bound to entries of an external parameter vector.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CircuitProgram {
    num_qubits: usize,
    ops: Vec<GateOp>,
    slots: Vec<ParamSlot>,
    /// Per op, the slot bound to each angle position.
    bindings: Vec<[Option<usize>; 3]>,
}

impl CircuitProgram {
    pub fn new(num_qubits: usize) -> Self {
        Self {
            num_qubits,
            ..Self::default()
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn param_slots(&self) -> &[ParamSlot] {
        &self.slots
    }

    pub fn num_params(&self) -> usize {
        self.slots.len()
    }

    /// Appends a fixed gate and returns its op index.
    pub fn push(&mut self, op: GateOp) -> Result<usize> {
        op.validate(self.num_qubits)?;
        self.ops.push(op);
        self.bindings.push([None; 3]);
        Ok(self.ops.len() - 1)
    }

    /// Appends a gate whose every angle becomes a fresh trainable slot.
    /// Returns the index of the first new slot.
    pub fn push_trainable(&mut self, op: GateOp) -> Result<usize> {
        let first = self.slots.len();
        let n = op.params.len();
        let idx = self.push(op)?;
        for angle in 0..n {
            self.bind(idx, angle)?;
        }
        Ok(first)
    }

    /// Binds angle `angle` of op `op` to a new slot and returns the slot index.
    pub fn bind(&mut self, op: usize, angle: usize) -> Result<usize> {
        let gate = self
            .ops
            .get(op)
            .ok_or_else(|| Error::InvalidGate(format!("no op at index {op}")))?;
        if angle >= gate.params.len() {
            return Err(Error::InvalidGate(format!(
                "op {op} ({:?}) has no angle {angle}",
                gate.kind
            )));
        }
        if self.bindings[op][angle].is_some() {
            return Err(Error::InvalidGate(format!(
                "angle {angle} of op {op} is already bound"
            )));
        }
        let slot = self.slots.len();
        self.slots.push(ParamSlot { op, angle });
        self.bindings[op][angle] = Some(slot);
        Ok(slot)
    }

    /// Appends every op of `other` (with its bindings) after the ops of `self`.
    pub fn extend(&mut self, other: &CircuitProgram) -> Result<()> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::LengthMismatch {
                expected: self.num_qubits,
                got: other.num_qubits,
            });
        }
        let offset = self.ops.len();
        for op in &other.ops {
            self.push(op.clone())?;
        }
        for s in &other.slots {
            self.bind(s.op + offset, s.angle)?;
        }
        Ok(())
    }

    pub(crate) fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.slots.len() {
            return Err(Error::LengthMismatch {
                expected: self.slots.len(),
                got: params.len(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_state(&self, state: &Statevector) -> Result<()> {
        if state.num_qubits() != self.num_qubits {
            return Err(Error::LengthMismatch {
                expected: self.num_qubits,
                got: state.num_qubits(),
            });
        }
        Ok(())
    }

    /// Angles of op `k` with bound slots substituted from `params`.
    #[inline]
    pub(crate) fn angles(&self, k: usize, params: &[f64]) -> [f64; 3] {
        let op = &self.ops[k];
        let mut out = [0.0; 3];
        for (a, v) in op.params.iter().enumerate() {
            out[a] = match self.bindings[k][a] {
                Some(slot) => params[slot],
                None => *v,
            };
        }
        out
    }

    /// Applies ops `from..` in place, parameters unchecked.
    pub(crate) fn apply_from(&self, state: &mut Statevector, params: &[f64], from: usize) {
        self.apply_from_range(state, params, from, self.ops.len());
    }

    pub(crate) fn apply_from_range(
        &self,
        state: &mut Statevector,
        params: &[f64],
        from: usize,
        to: usize,
    ) {
        let amps = state.amplitudes_mut();
        for k in from..to {
            let angles = self.angles(k, params);
            apply_unchecked(amps, &self.ops[k], &angles);
        }
    }

    pub fn run_in_place(&self, state: &mut Statevector, params: &[f64]) -> Result<()> {
        self.check_params(params)?;
        self.check_state(state)?;
        self.apply_from(state, params, 0);
        Ok(())
    }

    /// Runs the program on a copy of `input`.
    pub fn run(&self, input: &Statevector, params: &[f64]) -> Result<Statevector> {
        let mut state = input.clone();
        self.run_in_place(&mut state, params)?;
        Ok(state)
    }
}

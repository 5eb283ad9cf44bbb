//! Exact dense statevector simulation.
//!
//! Basis index bit `k` is qubit `k`; qubit 0 is the least significant bit.
//! Every module in the crate shares this convention.

mod circuit;
mod gate;
mod gradient;
mod observable;
mod statevector;

pub use circuit::{CircuitProgram, ParamSlot};
pub use gate::{apply_gate, GateKind, GateOp};
pub use gradient::{expectation_and_gradient, parameter_shift_gradient};
pub use observable::{expectation_z, zero_projector_fidelity, Observable};
pub use statevector::{Statevector, C64};

pub(crate) const NORM_TOLERANCE: f64 = 1e-10;

use serde::{Deserialize, Serialize};

use crate::sim::{CircuitProgram, GateOp};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Entangler {
    /// CNOT `k → k+1` for `k = 0..N-1`, ascending.
    #[default]
    Chain,
    /// Rotations only.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnsatzSpec {
    pub num_qubits: usize,
    pub layers: usize,
    #[serde(default)]
    pub entangler: Entangler,
}

impl AnsatzSpec {
    pub fn new(num_qubits: usize, layers: usize) -> Self {
        Self {
            num_qubits,
            layers,
            entangler: Entangler::Chain,
        }
    }

    /// `3 · N · l`.
    pub fn num_params(&self) -> usize {
        3 * self.num_qubits * self.layers
    }
}

/// Builds the layered ansatz. Parameter `3·(layer·N + q) + a` is angle `a`
/// of the U3 on qubit `q` in layer `layer`.
pub fn build_ansatz(spec: &AnsatzSpec) -> CircuitProgram {
    assert!(spec.num_qubits >= 1 && spec.layers >= 1, "empty ansatz");
    let n = spec.num_qubits;
    let mut prog = CircuitProgram::new(n);
    for _ in 0..spec.layers {
        for q in 0..n {
            prog.push_trainable(GateOp::u3(q, 0.0, 0.0, 0.0))
                .expect("qubit in range");
        }
        if spec.entangler == Entangler::Chain {
            for k in 0..n.saturating_sub(1) {
                prog.push(GateOp::cnot(k, k + 1)).expect("qubits in range");
            }
        }
    }
    prog
}

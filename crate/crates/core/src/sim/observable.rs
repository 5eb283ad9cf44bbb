use serde::{Deserialize, Serialize};

use super::Statevector;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Observable {
    /// Pauli Z on one qubit, value in [-1, 1].
    PauliZ(usize),
    /// Projector onto `|0…0⟩` of a qubit subset, value in [0, 1].
    ZeroProjector(Vec<usize>),
}

impl Observable {
    pub fn expectation(&self, state: &Statevector) -> Result<f64> {
        match self {
            Observable::PauliZ(q) => expectation_z(state, *q),
            Observable::ZeroProjector(qs) => zero_projector_fidelity(state, qs),
        }
    }

    pub(crate) fn validate(&self, num_qubits: usize) -> Result<()> {
        let qubits: &[usize] = match self {
            Observable::PauliZ(q) => std::slice::from_ref(q),
            Observable::ZeroProjector(qs) if qs.is_empty() => return Err(Error::EmptyTrash),
            Observable::ZeroProjector(qs) => qs,
        };
        match qubits.iter().find(|&&q| q >= num_qubits) {
            Some(&index) => Err(Error::QubitOutOfRange { index, num_qubits }),
            None => Ok(()),
        }
    }
}

/// `⟨Z_q⟩ = Σ |amp|² · (±1)` with `+1` where bit `q` is 0.
pub fn expectation_z(state: &Statevector, qubit: usize) -> Result<f64> {
    state.check_qubit(qubit)?;
    let bit = 1usize << qubit;
    let ez = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            if i & bit == 0 {
                a.norm_sqr()
            } else {
                -a.norm_sqr()
            }
        })
        .sum::<f64>();
    Ok(ez.clamp(-1.0, 1.0))
}

/// Probability that every qubit in `trash` reads 0.
pub fn zero_projector_fidelity(state: &Statevector, trash: &[usize]) -> Result<f64> {
    if trash.is_empty() {
        return Err(Error::EmptyTrash);
    }
    let mut mask = 0usize;
    for &q in trash {
        state.check_qubit(q)?;
        mask |= 1 << q;
    }
    let f = state
        .amplitudes()
        .iter()
        .enumerate()
        .filter(|(i, _)| i & mask == 0)
        .map(|(_, a)| a.norm_sqr())
        .sum::<f64>();
    Ok(f.clamp(0.0, 1.0))
}

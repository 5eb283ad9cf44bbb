//! Quantum image representations.
//!
//! Register layout, qubit 0 least significant:
//!
//! * FRQI, `2n + 1` qubits: position `|i⟩` on qubits `0..2n`, colour qubit `2n`.
//! * MCQI, `2n + 3` qubits: position on `0..2n`, channel select on `2n` (low
//!   bit) and `2n + 1` (high bit) with codes R = 0, G = 1, B = 2, pad = 3,
//!   value qubit `2n + 2`.
//!
//! Pixel `i` is the row-major index `row · 2^n + col`.

mod frqi;
mod image;
mod mcqi;

pub use frqi::{frqi_angles, frqi_circuit, frqi_decode, frqi_encode, FrqiAngles};
pub use image::{ColorImage, GrayImage};
pub use mcqi::{mcqi_angles, mcqi_circuit, mcqi_decode, mcqi_encode, McqiAngles};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Encoder {
    Frqi,
    Mcqi,
}

impl Encoder {
    pub fn num_qubits(self, n: u32) -> usize {
        match self {
            Encoder::Frqi => 2 * n as usize + 1,
            Encoder::Mcqi => 2 * n as usize + 3,
        }
    }

    /// The qubit carrying the rotation-encoded intensity: FRQI colour qubit
    /// or MCQI value qubit. Used as VQC readout and autoencoder latent.
    pub fn intensity_qubit(self, n: u32) -> usize {
        self.num_qubits(n) - 1
    }

    pub fn name(self) -> &'static str {
        match self {
            Encoder::Frqi => "frqi",
            Encoder::Mcqi => "mcqi",
        }
    }
}

pub(crate) fn check_n(n: u32) -> crate::Result<()> {
    // 2n + 3 qubits must stay well inside a dense simulation
    if !(1..=12).contains(&n) {
        return Err(crate::Error::InvalidImage(format!(
            "image exponent n = {n} outside 1..=12"
        )));
    }
    Ok(())
}

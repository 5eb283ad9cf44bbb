use serde::{Deserialize, Serialize};

use super::{
    build_ansatz, mean_value, mean_value_and_grad, AnsatzSpec, ClassifierParams, Entangler,
};
use crate::sim::{expectation_and_gradient, CircuitProgram, Observable, Statevector};
use crate::{Error, Result};

/// Autoencoder compressing onto one latent qubit; all other qubits are trash.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AcSpec {
    pub num_qubits: usize,
    pub layers: usize,
    pub latent: usize,
    pub trash: Vec<usize>,
    #[serde(default)]
    pub entangler: Entangler,
}

impl AcSpec {
    pub fn new(num_qubits: usize, layers: usize, latent: usize) -> Result<Self> {
        if num_qubits < 2 {
            return Err(Error::EmptyTrash);
        }
        if latent >= num_qubits {
            return Err(Error::QubitOutOfRange {
                index: latent,
                num_qubits,
            });
        }
        Ok(Self {
            num_qubits,
            layers,
            latent,
            trash: (0..num_qubits).filter(|&q| q != latent).collect(),
            entangler: Entangler::Chain,
        })
    }

    pub fn ansatz(&self) -> AnsatzSpec {
        AnsatzSpec {
            num_qubits: self.num_qubits,
            layers: self.layers,
            entangler: self.entangler,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trash.is_empty() {
            return Err(Error::EmptyTrash);
        }
        if self.trash.contains(&self.latent) || self.trash.len() != self.num_qubits - 1 {
            return Err(Error::Config(format!(
                "trash {:?} must be every qubit except the latent {}",
                self.trash, self.latent
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Autoencoder {
    spec: AcSpec,
    program: CircuitProgram,
    trash: Observable,
}

impl Autoencoder {
    pub fn new(spec: AcSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Self {
            program: build_ansatz(&spec.ansatz()),
            trash: Observable::ZeroProjector(spec.trash.clone()),
            spec,
        })
    }

    pub fn spec(&self) -> &AcSpec {
        &self.spec
    }

    pub fn num_params(&self) -> usize {
        self.program.num_params()
    }

    /// Probability that every trash qubit reads 0 after the encoder circuit.
    pub fn fidelity(&self, state: &Statevector, values: &[f64]) -> Result<f64> {
        let out = self.program.run(state, values)?;
        self.trash.expectation(&out)
    }

    pub fn fidelity_and_grad(
        &self,
        state: &Statevector,
        values: &[f64],
    ) -> Result<(f64, Vec<f64>)> {
        expectation_and_gradient(&self.program, values, state, &self.trash)
    }

    /// `1 − mean fidelity` over positive-class states.
    pub fn loss(&self, positives: &[Statevector], values: &[f64]) -> Result<f64> {
        let f = mean_value(positives.len(), |i| self.fidelity(&positives[i], values))?;
        Ok(1.0 - f)
    }

    pub fn loss_and_grad(
        &self,
        positives: &[Statevector],
        values: &[f64],
    ) -> Result<(f64, Vec<f64>)> {
        let (f, mut g) = mean_value_and_grad(positives.len(), self.num_params(), |i| {
            self.fidelity_and_grad(&positives[i], values)
        })?;
        g.iter_mut().for_each(|x| *x = -*x);
        Ok((1.0 - f, g))
    }
}

pub fn ac_fidelity(state: &Statevector, spec: &AcSpec, params: &ClassifierParams) -> Result<f64> {
    Autoencoder::new(spec.clone())?.fidelity(state, &params.values)
}

pub fn ac_loss(positives: &[Statevector], spec: &AcSpec, params: &ClassifierParams) -> Result<f64> {
    Autoencoder::new(spec.clone())?.loss(positives, &params.values)
}

/// `+1` iff `fidelity > threshold`.
pub fn ac_classify(fidelity: f64, threshold: f64) -> i32 {
    if fidelity > threshold {
        1
    } else {
        -1
    }
}

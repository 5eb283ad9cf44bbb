use super::{build_ansatz, mean_value, mean_value_and_grad, AnsatzSpec, ClassifierParams};
use crate::sim::{expectation_and_gradient, CircuitProgram, Observable, Statevector};
use crate::{Error, Result};

/// Three equal-width `ez` bins.
pub const DEFAULT_MULTI_BOUNDS: (f64, f64) = (-1.0 / 3.0, 1.0 / 3.0);

/// Variational classifier: ansatz followed by a Z readout on one qubit.
#[derive(Clone, Debug)]
pub struct Vqc {
    spec: AnsatzSpec,
    program: CircuitProgram,
    readout: Observable,
}

impl Vqc {
    pub fn new(spec: AnsatzSpec, readout: usize) -> Result<Self> {
        if readout >= spec.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: readout,
                num_qubits: spec.num_qubits,
            });
        }
        Ok(Self {
            program: build_ansatz(&spec),
            spec,
            readout: Observable::PauliZ(readout),
        })
    }

    pub fn spec(&self) -> &AnsatzSpec {
        &self.spec
    }

    pub fn num_params(&self) -> usize {
        self.program.num_params()
    }

    pub fn ez(&self, state: &Statevector, values: &[f64]) -> Result<f64> {
        let out = self.program.run(state, values)?;
        self.readout.expectation(&out)
    }

    pub fn ez_and_grad(&self, state: &Statevector, values: &[f64]) -> Result<(f64, Vec<f64>)> {
        expectation_and_gradient(&self.program, values, state, &self.readout)
    }

    /// Mean squared error `mean (ez − target)²`.
    pub fn mse(&self, states: &[Statevector], targets: &[f64], values: &[f64]) -> Result<f64> {
        check_batch(states, targets)?;
        mean_value(states.len(), |i| {
            let ez = self.ez(&states[i], values)?;
            Ok((ez - targets[i]).powi(2))
        })
    }

    /// MSE and its gradient, `∂/∂θ (ez − y)² = 2 (ez − y) ∂ez/∂θ`.
    pub fn mse_and_grad(
        &self,
        states: &[Statevector],
        targets: &[f64],
        values: &[f64],
    ) -> Result<(f64, Vec<f64>)> {
        check_batch(states, targets)?;
        mean_value_and_grad(states.len(), self.num_params(), |i| {
            let (ez, mut g) = self.ez_and_grad(&states[i], values)?;
            let r = ez - targets[i];
            g.iter_mut().for_each(|x| *x *= 2.0 * r);
            Ok((r * r, g))
        })
    }
}

fn check_batch(states: &[Statevector], targets: &[f64]) -> Result<()> {
    if states.is_empty() {
        return Err(Error::EmptyBatch);
    }
    if states.len() != targets.len() {
        return Err(Error::LengthMismatch {
            expected: states.len(),
            got: targets.len(),
        });
    }
    Ok(())
}

pub fn vqc_ez(
    state: &Statevector,
    spec: &AnsatzSpec,
    params: &ClassifierParams,
    readout: usize,
) -> Result<f64> {
    Vqc::new(*spec, readout)?.ez(state, &params.values)
}

/// `-1` if `ez ≤ split`, else `+1`.
pub fn vqc_classify(ez: f64, split: f64) -> i32 {
    if ez <= split {
        -1
    } else {
        1
    }
}

/// `0` for `ez ≤ b₁`, `1` for `b₁ < ez ≤ b₂`, `2` above.
pub fn vqc_classify_multi(ez: f64, bounds: (f64, f64)) -> i32 {
    if ez <= bounds.0 {
        0
    } else if ez <= bounds.1 {
        1
    } else {
        2
    }
}

/// Mean of `(ez − label)²` over a ±1-labelled batch.
pub fn vqc_loss(
    batch: &[(Statevector, i32)],
    spec: &AnsatzSpec,
    params: &ClassifierParams,
    readout: usize,
) -> Result<f64> {
    let vqc = Vqc::new(*spec, readout)?;
    let (states, targets): (Vec<_>, Vec<_>) = batch
        .iter()
        .map(|(s, l)| (s.clone(), f64::from(*l)))
        .unzip();
    vqc.mse(&states, &targets, &params.values)
}

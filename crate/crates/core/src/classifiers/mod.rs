//! Parameterized classifiers on encoded image states.
//!
//! Both classifiers share one hardware-efficient ansatz: per layer a U3 on
//! every qubit followed by a CNOT chain `k → k+1`. The variational classifier
//! thresholds `⟨Z⟩` of the intensity qubit; the autoencoder classifier
//! thresholds the probability that every other qubit ends in `|0⟩`.

mod ansatz;
mod autoencoder;
mod params;
mod vqc;

pub use ansatz::{build_ansatz, AnsatzSpec, Entangler};
pub use autoencoder::{ac_classify, ac_fidelity, ac_loss, AcSpec, Autoencoder};
pub use params::ClassifierParams;
pub use vqc::{vqc_classify, vqc_classify_multi, vqc_ez, vqc_loss, Vqc, DEFAULT_MULTI_BOUNDS};

use rayon::prelude::*;

use crate::{Error, Result};

/// Mean of per-item `(value, gradient)` pairs, evaluated in parallel and
/// reduced sequentially in item order so the result does not depend on
/// thread scheduling.
pub(crate) fn mean_value_and_grad<F>(
    items: usize,
    num_params: usize,
    eval: F,
) -> Result<(f64, Vec<f64>)>
where
    F: Fn(usize) -> Result<(f64, Vec<f64>)> + Sync,
{
    if items == 0 {
        return Err(Error::EmptyBatch);
    }
    let parts: Vec<(f64, Vec<f64>)> = (0..items)
        .into_par_iter()
        .map(&eval)
        .collect::<Result<_>>()?;
    let mut value = 0.0;
    let mut grad = vec![0.0; num_params];
    for (v, g) in &parts {
        value += v;
        for (acc, x) in grad.iter_mut().zip(g) {
            *acc += x;
        }
    }
    let scale = 1.0 / items as f64;
    grad.iter_mut().for_each(|g| *g *= scale);
    Ok((value * scale, grad))
}

pub(crate) fn mean_value<F>(items: usize, eval: F) -> Result<f64>
where
    F: Fn(usize) -> Result<f64> + Sync,
{
    if items == 0 {
        return Err(Error::EmptyBatch);
    }
    let parts: Vec<f64> = (0..items)
        .into_par_iter()
        .map(&eval)
        .collect::<Result<_>>()?;
    Ok(parts.iter().sum::<f64>() / items as f64)
}

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Trained classifier state: ansatz angles plus decision thresholds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassifierParams {
    pub values: Vec<f64>,
    /// Binary VQC split on `ez`.
    pub split: f64,
    /// Three-class VQC bounds `(b₁, b₂)`.
    pub multi_bounds: Option<(f64, f64)>,
    /// Autoencoder fidelity threshold.
    pub ac_threshold: Option<f64>,
}

impl ClassifierParams {
    pub fn new(values: Vec<f64>) -> Self {
        Self {
            values,
            split: 0.0,
            multi_bounds: None,
            ac_threshold: None,
        }
    }

    pub fn validate(&self, num_params: usize) -> Result<()> {
        if self.values.len() != num_params {
            return Err(Error::LengthMismatch {
                expected: num_params,
                got: self.values.len(),
            });
        }
        if let Some((b1, b2)) = self.multi_bounds {
            if !(-1.0 < b1 && b1 < b2 && b2 < 1.0) {
                return Err(Error::Config(format!(
                    "multi-class bounds ({b1}, {b2}) must satisfy -1 < b1 < b2 < 1"
                )));
            }
        }
        if let Some(t) = self.ac_threshold {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Config(format!(
                    "autoencoder threshold {t} outside [0, 1]"
                )));
            }
        }
        Ok(())
    }
}

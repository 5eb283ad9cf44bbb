use num_complex::Complex;

use super::NORM_TOLERANCE;
use crate::{Error, Result};

pub type C64 = Complex<f64>;

/// Normalized complex amplitudes over `num_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    num_qubits: usize,
    amps: Vec<C64>,
}

impl Statevector {
    /// The all-zero computational basis state.
    pub fn zero(num_qubits: usize) -> Self {
        assert!(num_qubits >= 1, "a register needs at least one qubit");
        assert!(num_qubits < usize::BITS as usize, "register too large");
        let mut amps = vec![C64::new(0.0, 0.0); 1 << num_qubits];
        amps[0] = C64::new(1.0, 0.0);
        Self { num_qubits, amps }
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let mut state = Self::zero(num_qubits);
        if index >= state.len() {
            return Err(Error::LengthMismatch {
                expected: state.len(),
                got: index + 1,
            });
        }
        state.amps[0] = C64::new(0.0, 0.0);
        state.amps[index] = C64::new(1.0, 0.0);
        Ok(state)
    }

    /// Wraps raw amplitudes, checking the length and that the squared norm
    /// is within `1e-10` of one.
    pub fn from_amplitudes(num_qubits: usize, amps: Vec<C64>) -> Result<Self> {
        if num_qubits == 0 || num_qubits >= usize::BITS as usize {
            return Err(Error::InvalidGate(format!(
                "unsupported register size {num_qubits}"
            )));
        }
        if amps.len() != 1 << num_qubits {
            return Err(Error::LengthMismatch {
                expected: 1 << num_qubits,
                got: amps.len(),
            });
        }
        let state = Self { num_qubits, amps };
        let norm = state.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(state)
    }

    /// Like [`Statevector::from_amplitudes`] but rescales any nonzero vector.
    pub fn normalized(num_qubits: usize, mut amps: Vec<C64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm * norm));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::from_amplitudes(num_qubits, amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    pub(crate) fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }

    /// Largest componentwise modulus of the difference to `other`.
    pub fn max_abs_diff(&self, other: &Statevector) -> f64 {
        assert_eq!(self.len(), other.len());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_state_is_normalized() {
        let s = Statevector::zero(3);
        assert_eq!(s.len(), 8);
        assert_eq!(s.probability(0), 1.0);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_length_and_norm() {
        let amps = vec![C64::new(1.0, 0.0); 3];
        assert!(matches!(
            Statevector::from_amplitudes(2, amps),
            Err(Error::LengthMismatch { .. })
        ));
        let amps = vec![C64::new(1.0, 0.0); 4];
        assert!(matches!(
            Statevector::from_amplitudes(2, amps.clone()),
            Err(Error::NotNormalized(_))
        ));
        let s = Statevector::normalized(2, amps).unwrap();
        assert!((s.probability(3) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn basis_state_out_of_range() {
        assert!(Statevector::basis(2, 4).is_err());
        assert_eq!(Statevector::basis(2, 3).unwrap().probability(3), 1.0);
    }
}

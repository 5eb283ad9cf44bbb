//! Quantum image classification on an exact statevector simulator.
//!
//! Grayscale images are encoded with FRQI and RGB images with MCQI, then
//! classified either by a variational circuit whose readout is the Z
//! expectation of one qubit, or by a quantum autoencoder whose trash-qubit
//! fidelity separates the class it was trained to compress.
//!
//! The crate is organised bottom-up:
//!
//! * [`sim`]: dense statevector, gates, observables, parameter-shift gradients.
//! * [`codec`]: FRQI / MCQI encoders, preparation circuits and decoders.
//! * [`classifiers`]: the variational classifier and the autoencoder classifier.
//! * [`trainer`]: Adam, the full-batch training loop, calibration and evaluation.
//! * [`datasets`]: bars-and-stripes, 2x2 colour images, MNIST and corrupted MNIST.
//! * [`experiment`]: declarative sweeps, reports, tables and the shade plot.

pub mod classifiers;
pub mod codec;
pub mod datasets;
mod error;
pub mod experiment;
pub mod sim;
pub mod trainer;

pub use error::{Error, Result};

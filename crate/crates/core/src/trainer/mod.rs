//! Optimisation and evaluation of the classifiers.

mod adam;
mod calibrate;
mod train;

pub use adam::{adam_step, AdamHyper, AdamState};
pub use calibrate::{calibrate_bounds, calibrate_split, calibrate_threshold, CALIBRATION_GRID};
pub use train::{
    evaluate, train, ClassifierKind, EncodedSet, Model, Task, TrainConfig, TrainHistory,
    AC_DEFAULT_THRESHOLD,
};

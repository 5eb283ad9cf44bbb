use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    adam_step, calibrate_bounds, calibrate_split, calibrate_threshold, AdamHyper, AdamState,
};
use crate::classifiers::{
    ac_classify, vqc_classify, vqc_classify_multi, AcSpec, AnsatzSpec, Autoencoder,
    ClassifierParams, Vqc, DEFAULT_MULTI_BOUNDS,
};
use crate::codec::{frqi_angles, frqi_encode, mcqi_angles, mcqi_encode, Encoder};
use crate::datasets::{Images, LabeledImageSet};
use crate::sim::Statevector;
use crate::{Error, Result};

/// Fidelity threshold used before calibration.
pub const AC_DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassifierKind {
    Vqc,
    Ac,
}

impl ClassifierKind {
    pub fn default_layers(self) -> usize {
        match self {
            ClassifierKind::Vqc => 5,
            ClassifierKind::Ac => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ClassifierKind::Vqc => "vqc",
            ClassifierKind::Ac => "ac",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Task {
    /// Labels -1 / +1.
    Binary,
    /// Labels 0 / 1 / 2.
    ThreeClass,
}

impl Task {
    fn from_labels(labels: &[i32]) -> Result<Self> {
        if labels.iter().all(|l| *l == -1 || *l == 1) {
            Ok(Task::Binary)
        } else if labels.iter().all(|l| (0..=2).contains(l)) {
            Ok(Task::ThreeClass)
        } else {
            Err(Error::Dataset(
                "labels must be all ±1 (binary) or all in {0, 1, 2}".into(),
            ))
        }
    }

    /// Regression target on `ez`: the label itself for binary tasks, the
    /// centres of the default thirds of `[-1, 1]` for three classes.
    fn target(self, label: i32) -> f64 {
        match self {
            Task::Binary => f64::from(label),
            Task::ThreeClass => f64::from(label - 1) * 2.0 / 3.0,
        }
    }
}

/// Encoded states of a labelled set, computed once and reused every epoch.
#[derive(Clone, Debug)]
pub struct EncodedSet {
    pub states: Vec<Statevector>,
    pub labels: Vec<i32>,
    pub encoder: Encoder,
    pub n: u32,
}

impl EncodedSet {
    pub fn encode(set: &LabeledImageSet, encoder: Encoder) -> Result<Self> {
        let states = match (set.images(), encoder) {
            (Images::Gray(v), Encoder::Frqi) => v
                .par_iter()
                .map(|img| frqi_encode(&frqi_angles(img)))
                .collect(),
            (Images::Color(v), Encoder::Mcqi) => v
                .par_iter()
                .map(|img| mcqi_encode(&mcqi_angles(img)))
                .collect(),
            (Images::Gray(_), Encoder::Mcqi) => {
                return Err(Error::Config("MCQI needs colour images".into()))
            }
            (Images::Color(_), Encoder::Frqi) => {
                return Err(Error::Config("FRQI needs grayscale images".into()))
            }
        };
        Ok(Self {
            states,
            labels: set.labels().to_vec(),
            encoder,
            n: set.meta().n,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn num_qubits(&self) -> usize {
        self.encoder.num_qubits(self.n)
    }

    pub fn intensity_qubit(&self) -> usize {
        self.encoder.intensity_qubit(self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub epochs: usize,
    pub train_size: usize,
    pub validation_size: usize,
    pub seed: u64,
    pub classifier: ClassifierKind,
    /// Ansatz depth; 5 for the VQC and 1 for the autoencoder when unset.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    /// Search the split / bounds / threshold on the training set after training.
    #[serde(default = "default_true")]
    pub calibrate: bool,
    #[serde(default)]
    pub adam: AdamHyper,
}

fn default_true() -> bool {
    true
}

impl TrainConfig {
    pub fn new(classifier: ClassifierKind) -> Self {
        Self {
            epochs: 250,
            train_size: 100,
            validation_size: 1000,
            seed: 0,
            classifier,
            layers: None,
            calibrate: true,
            adam: AdamHyper::default(),
        }
    }

    pub fn layers(&self) -> usize {
        self.layers
            .unwrap_or_else(|| self.classifier.default_layers())
    }

    pub fn validate(&self) -> Result<()> {
        if self.epochs == 0 || self.train_size == 0 || self.validation_size == 0 {
            return Err(Error::Config(
                "epochs, train_size and validation_size must be at least 1".into(),
            ));
        }
        if self.layers() == 0 {
            return Err(Error::Config("layers must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrainHistory {
    /// Loss before each epoch's update.
    pub loss: Vec<f64>,
    pub params: ClassifierParams,
    pub train_accuracy: f64,
    pub validation_accuracy: f64,
    /// Validation accuracy with the default split / bounds / threshold.
    pub validation_accuracy_uncalibrated: f64,
}

impl TrainHistory {
    pub fn final_loss(&self) -> f64 {
        self.loss.last().copied().unwrap_or(f64::NAN)
    }
}

/// A classifier circuit bound to a register layout and task.
#[derive(Clone, Debug)]
pub enum Model {
    Vqc { vqc: Vqc, task: Task },
    Ac(Autoencoder),
}

impl Model {
    pub fn new(
        kind: ClassifierKind,
        num_qubits: usize,
        intensity_qubit: usize,
        layers: usize,
        task: Task,
    ) -> Result<Self> {
        match kind {
            ClassifierKind::Vqc => Ok(Model::Vqc {
                vqc: Vqc::new(AnsatzSpec::new(num_qubits, layers), intensity_qubit)?,
                task,
            }),
            ClassifierKind::Ac => {
                if task != Task::Binary {
                    return Err(Error::Config(
                        "the autoencoder classifier is binary only".into(),
                    ));
                }
                Ok(Model::Ac(Autoencoder::new(AcSpec::new(
                    num_qubits,
                    layers,
                    intensity_qubit,
                )?)?))
            }
        }
    }

    /// Model matching an encoded set and a configuration.
    pub fn for_set(set: &EncodedSet, cfg: &TrainConfig) -> Result<Self> {
        Self::new(
            cfg.classifier,
            set.num_qubits(),
            set.intensity_qubit(),
            cfg.layers(),
            Task::from_labels(&set.labels)?,
        )
    }

    pub fn num_params(&self) -> usize {
        match self {
            Model::Vqc { vqc, .. } => vqc.num_params(),
            Model::Ac(ac) => ac.num_params(),
        }
    }

    /// `ez` for the VQC, trash fidelity for the autoencoder.
    pub fn score(&self, state: &Statevector, values: &[f64]) -> Result<f64> {
        match self {
            Model::Vqc { vqc, .. } => vqc.ez(state, values),
            Model::Ac(ac) => ac.fidelity(state, values),
        }
    }

    pub fn scores(&self, states: &[Statevector], values: &[f64]) -> Result<Vec<f64>> {
        states.par_iter().map(|s| self.score(s, values)).collect()
    }

    pub fn decide(&self, score: f64, params: &ClassifierParams) -> i32 {
        match self {
            Model::Vqc {
                task: Task::Binary, ..
            } => vqc_classify(score, params.split),
            Model::Vqc {
                task: Task::ThreeClass,
                ..
            } => vqc_classify_multi(score, params.multi_bounds.unwrap_or(DEFAULT_MULTI_BOUNDS)),
            Model::Ac(_) => ac_classify(score, params.ac_threshold.unwrap_or(AC_DEFAULT_THRESHOLD)),
        }
    }

    pub fn predict(&self, state: &Statevector, params: &ClassifierParams) -> Result<i32> {
        Ok(self.decide(self.score(state, &params.values)?, params))
    }

    fn calibrate(&self, scores: &[f64], labels: &[i32], params: &mut ClassifierParams) {
        match self {
            Model::Vqc {
                task: Task::Binary, ..
            } => params.split = calibrate_split(scores, labels),
            Model::Vqc {
                task: Task::ThreeClass,
                ..
            } => params.multi_bounds = Some(calibrate_bounds(scores, labels)),
            Model::Ac(_) => params.ac_threshold = Some(calibrate_threshold(scores, labels)),
        }
    }

    /// Objective and gradient on the training set: MSE to the label targets
    /// for the VQC, `1 − mean fidelity` over positives for the autoencoder.
    fn loss_and_grad(&self, batch: &Batch, values: &[f64]) -> Result<(f64, Vec<f64>)> {
        match self {
            Model::Vqc { vqc, .. } => vqc.mse_and_grad(&batch.states, &batch.targets, values),
            Model::Ac(ac) => ac.loss_and_grad(&batch.states, values),
        }
    }
}

struct Batch {
    states: Vec<Statevector>,
    targets: Vec<f64>,
}

fn accuracy_from_scores(
    model: &Model,
    scores: &[f64],
    labels: &[i32],
    p: &ClassifierParams,
) -> f64 {
    let correct = scores
        .iter()
        .zip(labels)
        .filter(|(&s, &l)| model.decide(s, p) == l)
        .count();
    correct as f64 / labels.len() as f64
}

/// Fraction of `validation` classified correctly.
pub fn evaluate(model: &Model, params: &ClassifierParams, validation: &EncodedSet) -> Result<f64> {
    if validation.is_empty() {
        return Err(Error::EmptyBatch);
    }
    params.validate(model.num_params())?;
    let scores = model.scores(&validation.states, &params.values)?;
    Ok(accuracy_from_scores(
        model,
        &scores,
        &validation.labels,
        params,
    ))
}

/// Full-batch Adam on the whole training set (autoencoder: positives only),
/// one step per epoch, then threshold calibration and validation.
pub fn train(
    train: &EncodedSet,
    validation: &EncodedSet,
    cfg: &TrainConfig,
) -> Result<TrainHistory> {
    cfg.validate()?;
    if train.is_empty() {
        return Err(Error::Dataset("training set is empty".into()));
    }
    if validation.is_empty() {
        return Err(Error::Dataset("validation set is empty".into()));
    }
    let model = Model::for_set(train, cfg)?;
    let task = Task::from_labels(&train.labels)?;

    let batch = match &model {
        Model::Vqc { .. } => Batch {
            states: train.states.clone(),
            targets: train.labels.iter().map(|&l| task.target(l)).collect(),
        },
        Model::Ac(_) => {
            let states: Vec<Statevector> = train
                .states
                .iter()
                .zip(&train.labels)
                .filter(|(_, &l)| l == 1)
                .map(|(s, _)| s.clone())
                .collect();
            if states.is_empty() {
                return Err(Error::Dataset(
                    "autoencoder training needs positive samples".into(),
                ));
            }
            Batch {
                targets: vec![1.0; states.len()],
                states,
            }
        }
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut values: Vec<f64> = (0..model.num_params())
        .map(|_| rng.gen_range(0.0..TAU))
        .collect();
    let mut adam = AdamState::new(values.len(), cfg.adam);
    let mut loss = Vec::with_capacity(cfg.epochs);
    for epoch in 0..cfg.epochs {
        let (l, grad) = model.loss_and_grad(&batch, &values)?;
        if !l.is_finite() {
            return Err(Error::NonFinite {
                what: "training loss at epoch",
                index: epoch,
            });
        }
        loss.push(l);
        adam_step(&mut values, &grad, &mut adam)?;
    }

    let mut params = ClassifierParams::new(values);
    let uncalibrated = params.clone();
    let train_scores = model.scores(&train.states, &params.values)?;
    if cfg.calibrate {
        model.calibrate(&train_scores, &train.labels, &mut params);
    }
    let train_accuracy = accuracy_from_scores(&model, &train_scores, &train.labels, &params);

    let val_scores = model.scores(&validation.states, &params.values)?;
    let validation_accuracy =
        accuracy_from_scores(&model, &val_scores, &validation.labels, &params);
    let validation_accuracy_uncalibrated =
        accuracy_from_scores(&model, &val_scores, &validation.labels, &uncalibrated);

    Ok(TrainHistory {
        loss,
        params,
        train_accuracy,
        validation_accuracy,
        validation_accuracy_uncalibrated,
    })
}

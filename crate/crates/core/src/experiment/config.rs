use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::codec::Encoder;
use crate::datasets::{DatasetKind, DatasetSpec};
use crate::trainer::{AdamHyper, ClassifierKind, TrainConfig};
use crate::{Error, Result};

/// Fields a sweep may vary.
pub const SWEEP_FIELDS: [&str; 9] = [
    "n",
    "shade",
    "train_size",
    "validation_size",
    "classifier",
    "corruption",
    "seed",
    "data_seed",
    "epochs",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SweepValue {
    Int(i64),
    Text(String),
}

impl std::fmt::Display for SweepValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepValue::Int(v) => write!(f, "{v}"),
            SweepValue::Text(v) => f.write_str(v),
        }
    }
}

/// One swept axis; cells are the cartesian product of all axes, the first
/// axis varying slowest.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub field: String,
    pub values: Vec<SweepValue>,
}

/// Replaces the epoch count for matching cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpochOverride {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classifier: Option<ClassifierKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset: Option<DatasetKind>,
    /// Applies when `n <= max_n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_n: Option<u32>,
    pub epochs: usize,
}

impl EpochOverride {
    fn matches(&self, classifier: ClassifierKind, dataset: &DatasetSpec) -> bool {
        self.classifier.is_none_or(|c| c == classifier)
            && self.dataset.is_none_or(|d| d == dataset.kind)
            && self.max_n.is_none_or(|m| dataset.n <= m)
    }
}

/// Training settings shared by every cell; the classifier is chosen at the
/// top level of the configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainSettings {
    #[serde(default = "defaults::epochs")]
    pub epochs: usize,
    #[serde(default = "defaults::train_size")]
    pub train_size: usize,
    #[serde(default = "defaults::validation_size")]
    pub validation_size: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layers: Option<usize>,
    #[serde(default = "defaults::yes")]
    pub calibrate: bool,
    #[serde(default)]
    pub adam: AdamHyper,
    #[serde(
        default,
        rename = "epoch_override",
        skip_serializing_if = "Vec::is_empty"
    )]
    pub epoch_overrides: Vec<EpochOverride>,
}

mod defaults {
    pub fn epochs() -> usize {
        250
    }
    pub fn train_size() -> usize {
        100
    }
    pub fn validation_size() -> usize {
        1000
    }
    pub fn yes() -> bool {
        true
    }
}

impl Default for TrainSettings {
    fn default() -> Self {
        Self {
            epochs: defaults::epochs(),
            train_size: defaults::train_size(),
            validation_size: defaults::validation_size(),
            seed: 0,
            layers: None,
            calibrate: true,
            adam: AdamHyper::default(),
            epoch_overrides: Vec::new(),
        }
    }
}

impl TrainSettings {
    pub fn to_train_config(&self, classifier: ClassifierKind) -> TrainConfig {
        TrainConfig {
            epochs: self.epochs,
            train_size: self.train_size,
            validation_size: self.validation_size,
            seed: self.seed,
            classifier,
            layers: self.layers,
            calibrate: self.calibrate,
            adam: self.adam,
        }
    }
}

/// Declarative description of one experiment, read from TOML.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub encoder: Encoder,
    pub classifier: ClassifierKind,
    /// JSON-lines report written row by row.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub dataset: DatasetSpec,
    #[serde(default)]
    pub train: TrainSettings,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sweep: Vec<Sweep>,
}

/// A fully resolved sweep cell.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub encoder: Encoder,
    pub dataset: DatasetSpec,
    pub train: TrainConfig,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text).map_err(|e| match e {
            Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    /// Number of sweep cells.
    pub fn num_cells(&self) -> usize {
        self.sweep.iter().map(|s| s.values.len()).product()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.sweep.iter().enumerate() {
            if !SWEEP_FIELDS.contains(&s.field.as_str()) {
                return Err(Error::Config(format!(
                    "cannot sweep `{}`; expected one of {}",
                    s.field,
                    SWEEP_FIELDS.join(", ")
                )));
            }
            if s.values.is_empty() {
                return Err(Error::Config(format!(
                    "sweep over `{}` has no values",
                    s.field
                )));
            }
            if self.sweep[..i].iter().any(|o| o.field == s.field) {
                return Err(Error::Config(format!("`{}` is swept twice", s.field)));
            }
        }
        for cell in self.cells()? {
            check_pairing(cell.encoder, &cell.dataset)?;
            cell.dataset.validate()?;
            cell.train.validate()?;
        }
        Ok(())
    }

    /// Resolves every sweep cell in row-major order.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        let total = self.num_cells();
        let mut cells = Vec::with_capacity(total);
        for index in 0..total {
            let mut dataset = self.dataset.clone();
            let mut settings = self.train.clone();
            let mut classifier = self.classifier;
            let mut stride = total;
            for s in &self.sweep {
                stride /= s.values.len();
                let v = &s.values[(index / stride) % s.values.len()];
                assign(&s.field, v, &mut dataset, &mut settings, &mut classifier)?;
            }
            let mut train = settings.to_train_config(classifier);
            if let Some(o) = settings
                .epoch_overrides
                .iter()
                .find(|o| o.matches(classifier, &dataset))
            {
                train.epochs = o.epochs;
            }
            cells.push(Cell {
                index,
                encoder: self.encoder,
                dataset,
                train,
            });
        }
        Ok(cells)
    }
}

/// FRQI takes grayscale data and MCQI colour data.
pub fn check_pairing(encoder: Encoder, dataset: &DatasetSpec) -> Result<()> {
    let wants_color = encoder == Encoder::Mcqi;
    if wants_color != dataset.kind.is_color() {
        return Err(Error::Config(format!(
            "encoder {} cannot encode the {} data set",
            encoder.name(),
            dataset.kind.name()
        )));
    }
    Ok(())
}

fn int<T: TryFrom<i64>>(field: &str, v: &SweepValue) -> Result<T> {
    match v {
        SweepValue::Int(i) => T::try_from(*i)
            .map_err(|_| Error::Config(format!("sweep value {i} out of range for `{field}`"))),
        SweepValue::Text(t) => Err(Error::Config(format!(
            "sweep over `{field}` expects integers, got {t:?}"
        ))),
    }
}

fn text<'a>(field: &str, v: &'a SweepValue) -> Result<&'a str> {
    match v {
        SweepValue::Text(t) => Ok(t),
        SweepValue::Int(i) => Err(Error::Config(format!(
            "sweep over `{field}` expects strings, got {i}"
        ))),
    }
}

fn assign(
    field: &str,
    v: &SweepValue,
    dataset: &mut DatasetSpec,
    train: &mut TrainSettings,
    classifier: &mut ClassifierKind,
) -> Result<()> {
    match field {
        "n" => dataset.n = int(field, v)?,
        "shade" => dataset.shade = Some(int(field, v)?),
        "data_seed" => dataset.seed = int(field, v)?,
        "corruption" => dataset.corruption = Some(text(field, v)?.to_owned()),
        "train_size" => train.train_size = int(field, v)?,
        "validation_size" => train.validation_size = int(field, v)?,
        "seed" => train.seed = int(field, v)?,
        "epochs" => train.epochs = int(field, v)?,
        "classifier" => {
            *classifier = match text(field, v)? {
                "vqc" => ClassifierKind::Vqc,
                "ac" => ClassifierKind::Ac,
                other => {
                    return Err(Error::Config(format!(
                        "unknown classifier {other:?}; expected \"vqc\" or \"ac\""
                    )))
                }
            }
        }
        other => return Err(Error::Config(format!("cannot sweep `{other}`"))),
    }
    Ok(())
}

//! Labelled image sets: generated bars-and-stripes and 2x2 colour images,
//! MNIST from IDX files, and pre-corrupted MNIST from NumPy dumps.

mod bas;
mod color;
mod idx;
mod mnist;
mod npy;
mod resize;

pub use bas::gen_bas;
pub use color::gen_color22;
pub use idx::{read_idx, IdxArray};
pub use mnist::{
    load_corrupted, load_corrupted_split, load_mnist, load_mnist_split, RawDigits, CORRUPTIONS,
};
pub use npy::{read_npy, NpyArray};
pub use resize::{bilinear_resize, resize_to_image};

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::codec::{ColorImage, GrayImage};
use crate::{Error, Result};

/// Added to the training seed to draw validation sets of generated data.
pub const VALIDATION_SEED_OFFSET: u64 = 0x5DEE_CE66_D1CE_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetKind {
    Bas,
    Mnist,
    MnistCorrupt,
    Color22,
}

impl DatasetKind {
    pub fn is_color(self) -> bool {
        self == DatasetKind::Color22
    }

    pub fn name(self) -> &'static str {
        match self {
            DatasetKind::Bas => "bas",
            DatasetKind::Mnist => "mnist",
            DatasetKind::MnistCorrupt => "mnist_corrupt",
            DatasetKind::Color22 => "color22",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Images {
    Gray(Vec<GrayImage>),
    Color(Vec<ColorImage>),
}

impl Images {
    pub fn len(&self) -> usize {
        match self {
            Images::Gray(v) => v.len(),
            Images::Color(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetMeta {
    pub source: DatasetKind,
    pub n: u32,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shade: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corruption: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub digits: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LabeledImageSet {
    images: Images,
    labels: Vec<i32>,
    meta: DatasetMeta,
}

impl LabeledImageSet {
    pub fn new(images: Images, labels: Vec<i32>, meta: DatasetMeta) -> Result<Self> {
        if images.len() != labels.len() {
            return Err(Error::Dataset(format!(
                "{} images but {} labels",
                images.len(),
                labels.len()
            )));
        }
        Ok(Self {
            images,
            labels,
            meta,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn images(&self) -> &Images {
        &self.images
    }

    pub fn labels(&self) -> &[i32] {
        &self.labels
    }

    pub fn meta(&self) -> &DatasetMeta {
        &self.meta
    }

    /// Sorted distinct labels.
    pub fn label_set(&self) -> Vec<i32> {
        let mut l = self.labels.clone();
        l.sort_unstable();
        l.dedup();
        l
    }
}

/// Everything needed to draw one data set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSpec {
    pub kind: DatasetKind,
    pub n: u32,
    #[serde(default)]
    pub count: usize,
    #[serde(default)]
    pub seed: u64,
    /// MNIST digits, mapped in ascending order to labels.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub digits: Vec<u8>,
    /// Colour of the marked pixel in the 2x2 colour set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shade: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corruption: Option<String>,
    /// Directory holding MNIST / corrupted-MNIST files.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    /// File-name stem of the split to read, e.g. `train`, `t10k`, `test`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split: Option<String>,
}

impl DatasetSpec {
    pub fn validate(&self) -> Result<()> {
        crate::codec::check_n(self.n)?;
        match self.kind {
            DatasetKind::Mnist | DatasetKind::MnistCorrupt => {
                if self.path.is_none() {
                    return Err(Error::Config(format!(
                        "{} data set needs a `path`",
                        self.kind.name()
                    )));
                }
                if self.digits.len() < 2 {
                    return Err(Error::Config("MNIST needs at least two digits".into()));
                }
                if self.kind == DatasetKind::MnistCorrupt && self.corruption.is_none() {
                    return Err(Error::Config("corrupted MNIST needs a `corruption`".into()));
                }
            }
            DatasetKind::Color22 => {
                if self.n != 1 {
                    return Err(Error::Config("the colour data set is 2x2 (n = 1)".into()));
                }
                if self.shade.is_none() {
                    return Err(Error::Config("colour data set needs a `shade`".into()));
                }
            }
            DatasetKind::Bas => {}
        }
        Ok(())
    }

    fn split_name(&self) -> &str {
        self.split.as_deref().unwrap_or("train")
    }

    fn resolve(&self, root: Option<&Path>) -> PathBuf {
        let p = self.path.clone().unwrap_or_default();
        match root {
            Some(r) if p.is_relative() => r.join(p),
            _ => p,
        }
    }

    /// Draws `count` samples. Relative paths are resolved against `root`.
    pub fn generate(&self, root: Option<&Path>) -> Result<LabeledImageSet> {
        self.validate()?;
        match self.kind {
            DatasetKind::Bas => gen_bas(self.n, self.count, self.seed),
            DatasetKind::Color22 => gen_color22(self.shade.unwrap_or(0), self.count, self.seed),
            DatasetKind::Mnist => load_mnist(
                &self.resolve(root),
                self.split_name(),
                &self.digits,
                self.n,
                self.count,
                self.seed,
            ),
            DatasetKind::MnistCorrupt => load_corrupted(
                &self.resolve(root),
                self.corruption.as_deref().unwrap_or_default(),
                self.split_name(),
                &self.digits,
                self.n,
                self.count,
                self.seed,
            ),
        }
    }

    /// Disjoint training and validation draws. Generated sets use independent
    /// seeds; file-backed sets partition one shuffled pool.
    pub fn train_validation(
        &self,
        train_size: usize,
        validation_size: usize,
        root: Option<&Path>,
    ) -> Result<(LabeledImageSet, LabeledImageSet)> {
        self.validate()?;
        match self.kind {
            DatasetKind::Bas | DatasetKind::Color22 => {
                let train = Self {
                    count: train_size,
                    ..self.clone()
                };
                let validation = Self {
                    count: validation_size,
                    seed: self.seed.wrapping_add(VALIDATION_SEED_OFFSET),
                    ..self.clone()
                };
                Ok((train.generate(root)?, validation.generate(root)?))
            }
            DatasetKind::Mnist => load_mnist_split(
                &self.resolve(root),
                self.split_name(),
                &self.digits,
                self.n,
                (train_size, validation_size),
                self.seed,
            ),
            DatasetKind::MnistCorrupt => load_corrupted_split(
                &self.resolve(root),
                self.corruption.as_deref().unwrap_or_default(),
                self.split_name(),
                &self.digits,
                self.n,
                (train_size, validation_size),
                self.seed,
            ),
        }
    }
}

/// Reads a whole file, transparently inflating gzip content.
pub(crate) fn read_maybe_gz(path: &Path) -> Result<Vec<u8>> {
    use std::io::Read;
    let raw = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    if raw.starts_with(&[0x1f, 0x8b]) {
        let mut out = Vec::new();
        flate2::read::GzDecoder::new(raw.as_slice())
            .read_to_end(&mut out)
            .map_err(|e| Error::io(path, e))?;
        Ok(out)
    } else {
        Ok(raw)
    }
}

/// `base` if it exists, else `base.gz`.
pub(crate) fn find_file(dir: &Path, name: &str) -> Result<PathBuf> {
    let plain = dir.join(name);
    if plain.is_file() {
        return Ok(plain);
    }
    let gz = dir.join(format!("{name}.gz"));
    if gz.is_file() {
        return Ok(gz);
    }
    Err(Error::io(
        plain,
        std::io::Error::new(
            std::io::ErrorKind::NotFound,
            "file not found (also tried .gz)",
        ),
    ))
}

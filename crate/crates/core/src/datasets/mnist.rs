use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{find_file, read_idx, read_npy, resize_to_image};
use super::{DatasetKind, DatasetMeta, Images, LabeledImageSet};
use crate::{Error, Result};

/// Corruption names of the corrupted-MNIST benchmark, in its usual order.
pub const CORRUPTIONS: [&str; 15] = [
    "shot_noise",
    "impulse_noise",
    "glass_blur",
    "motion_blur",
    "shear",
    "scale",
    "rotate",
    "brightness",
    "translate",
    "stripe",
    "fog",
    "spatter",
    "dotted_line",
    "zigzag",
    "canny_edges",
];

/// Square digit images as stored on disk, before resizing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDigits {
    pub side: usize,
    pub pixels: Vec<u8>,
    pub labels: Vec<u8>,
}

impl RawDigits {
    fn new(dims: &[usize], pixels: Vec<u8>, labels: Vec<u8>, origin: &Path) -> Result<Self> {
        let bad = |reason: String| Error::Format {
            format: "digit image",
            path: origin.to_path_buf(),
            reason,
        };
        let (count, rows, cols) = match dims {
            [n, r, c] | [n, r, c, 1] => (*n, *r, *c),
            _ => return Err(bad(format!("expected N×H×W(×1) images, got {dims:?}"))),
        };
        if rows != cols || rows == 0 {
            return Err(bad(format!("images are {rows}×{cols}, not square")));
        }
        if labels.len() != count {
            return Err(bad(format!("{count} images but {} labels", labels.len())));
        }
        if let Some(l) = labels.iter().find(|&&l| l > 9) {
            return Err(bad(format!("label {l} is not a digit")));
        }
        Ok(Self {
            side: rows,
            pixels,
            labels,
        })
    }

    /// `{split}-images-idx3-ubyte` and `{split}-labels-idx1-ubyte`, optionally gzipped.
    pub fn from_idx(dir: &Path, split: &str) -> Result<Self> {
        let images_path = find_file(dir, &format!("{split}-images-idx3-ubyte"))?;
        let labels_path = find_file(dir, &format!("{split}-labels-idx1-ubyte"))?;
        let images = read_idx(&images_path)?;
        let labels = read_idx(&labels_path)?;
        if labels.dims.len() != 1 {
            return Err(Error::Format {
                format: "IDX",
                path: labels_path,
                reason: format!("labels must be 1-D, got {:?}", labels.dims),
            });
        }
        Self::new(&images.dims, images.data, labels.data, &images_path)
    }

    /// `{dir}/{corruption}/{split}_images.npy` and `{split}_labels.npy`,
    /// optionally gzipped.
    pub fn from_npy(dir: &Path, corruption: &str, split: &str) -> Result<Self> {
        let dir = dir.join(corruption);
        let images_path = find_file(&dir, &format!("{split}_images.npy"))?;
        let labels_path = find_file(&dir, &format!("{split}_labels.npy"))?;
        let images = read_npy(&images_path)?;
        let labels = read_npy(&labels_path)?;
        if labels.shape.len() != 1 {
            return Err(Error::Format {
                format: "NPY",
                path: labels_path,
                reason: format!("labels must be 1-D, got {:?}", labels.shape),
            });
        }
        Self::new(&images.shape, images.data, labels.data, &images_path)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn image(&self, k: usize) -> &[u8] {
        let a = self.side * self.side;
        &self.pixels[k * a..(k + 1) * a]
    }

    /// Shuffles the requested digits with `seed` and cuts consecutive
    /// disjoint sets of the given sizes, each resized to `2^n × 2^n`.
    ///
    /// Digits are sorted; with two digits the labels are -1/+1, otherwise
    /// the digit's rank 0, 1, 2, ….
    pub fn select(
        &self,
        digits: &[u8],
        n: u32,
        sizes: &[usize],
        seed: u64,
        meta: DatasetMeta,
    ) -> Result<Vec<LabeledImageSet>> {
        let mut digits = digits.to_vec();
        digits.sort_unstable();
        digits.dedup();
        if digits.len() < 2 {
            return Err(Error::Dataset("need at least two distinct digits".into()));
        }
        for &d in &digits {
            if !self.labels.contains(&d) {
                return Err(Error::Dataset(format!(
                    "digit {d} does not occur in the data"
                )));
            }
        }
        let label_of = |d: u8| -> i32 {
            let rank = digits.iter().position(|&x| x == d).expect("filtered") as i32;
            if digits.len() == 2 {
                2 * rank - 1
            } else {
                rank
            }
        };
        let mut pool: Vec<usize> = (0..self.len())
            .filter(|&k| digits.contains(&self.labels[k]))
            .collect();
        let needed: usize = sizes.iter().sum();
        if needed > pool.len() {
            return Err(Error::Dataset(format!(
                "requested {needed} images but only {} match digits {digits:?}",
                pool.len()
            )));
        }
        pool.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

        let mut out = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for &size in sizes {
            let chosen = &pool[next..next + size];
            next += size;
            let images = chosen
                .iter()
                .map(|&k| resize_to_image(self.image(k), self.side, n))
                .collect::<Result<Vec<_>>>()?;
            let labels = chosen.iter().map(|&k| label_of(self.labels[k])).collect();
            let meta = DatasetMeta {
                n,
                seed,
                digits: digits.clone(),
                ..meta.clone()
            };
            out.push(LabeledImageSet::new(Images::Gray(images), labels, meta)?);
        }
        Ok(out)
    }
}

fn mnist_meta() -> DatasetMeta {
    DatasetMeta {
        source: DatasetKind::Mnist,
        n: 0,
        seed: 0,
        shade: None,
        corruption: None,
        digits: Vec::new(),
    }
}

fn corrupt_meta(corruption: &str) -> DatasetMeta {
    DatasetMeta {
        source: DatasetKind::MnistCorrupt,
        corruption: Some(corruption.to_string()),
        ..mnist_meta()
    }
}

fn check_corruption(name: &str) -> Result<()> {
    if CORRUPTIONS.contains(&name) {
        Ok(())
    } else {
        Err(Error::UnknownCorruption {
            name: name.to_string(),
            valid: CORRUPTIONS.join(", "),
        })
    }
}

pub fn load_mnist(
    dir: &Path,
    split: &str,
    digits: &[u8],
    n: u32,
    count: usize,
    seed: u64,
) -> Result<LabeledImageSet> {
    let raw = RawDigits::from_idx(dir, split)?;
    Ok(raw
        .select(digits, n, &[count], seed, mnist_meta())?
        .remove(0))
}

/// Disjoint `(train, validation)` draws from one shuffled pool.
pub fn load_mnist_split(
    dir: &Path,
    split: &str,
    digits: &[u8],
    n: u32,
    sizes: (usize, usize),
    seed: u64,
) -> Result<(LabeledImageSet, LabeledImageSet)> {
    let raw = RawDigits::from_idx(dir, split)?;
    let mut sets = raw.select(digits, n, &[sizes.0, sizes.1], seed, mnist_meta())?;
    let validation = sets.pop().expect("two sets");
    Ok((sets.pop().expect("two sets"), validation))
}

pub fn load_corrupted(
    dir: &Path,
    corruption: &str,
    split: &str,
    digits: &[u8],
    n: u32,
    count: usize,
    seed: u64,
) -> Result<LabeledImageSet> {
    check_corruption(corruption)?;
    let raw = RawDigits::from_npy(dir, corruption, split)?;
    Ok(raw
        .select(digits, n, &[count], seed, corrupt_meta(corruption))?
        .remove(0))
}

pub fn load_corrupted_split(
    dir: &Path,
    corruption: &str,
    split: &str,
    digits: &[u8],
    n: u32,
    sizes: (usize, usize),
    seed: u64,
) -> Result<(LabeledImageSet, LabeledImageSet)> {
    check_corruption(corruption)?;
    let raw = RawDigits::from_npy(dir, corruption, split)?;
    let mut sets = raw.select(
        digits,
        n,
        &[sizes.0, sizes.1],
        seed,
        corrupt_meta(corruption),
    )?;
    let validation = sets.pop().expect("two sets");
    Ok((sets.pop().expect("two sets"), validation))
}

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DatasetKind, DatasetMeta, Images, LabeledImageSet};
use crate::codec::GrayImage;
use crate::Result;

/// Bars (+1, every column constant) and stripes (-1, every row constant).
///
/// Each line of the chosen orientation is independently black or white;
/// uniform images fit both classes and are redrawn.
pub fn gen_bas(n: u32, count: usize, seed: u64) -> Result<LabeledImageSet> {
    crate::codec::check_n(n)?;
    let side = 1usize << n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut images = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(count);
    for _ in 0..count {
        let bars: bool = rng.gen();
        let lines: Vec<u8> = loop {
            let lines: Vec<u8> = (0..side).map(|_| if rng.gen() { 255 } else { 0 }).collect();
            if lines.iter().any(|&v| v != lines[0]) {
                break lines;
            }
        };
        let mut pixels = Vec::with_capacity(side * side);
        for r in 0..side {
            for c in 0..side {
                pixels.push(if bars { lines[c] } else { lines[r] });
            }
        }
        images.push(GrayImage::new(n, pixels)?);
        labels.push(if bars { 1 } else { -1 });
    }
    LabeledImageSet::new(
        Images::Gray(images),
        labels,
        DatasetMeta {
            source: DatasetKind::Bas,
            n,
            seed,
            shade: None,
            corruption: None,
            digits: Vec::new(),
        },
    )
}

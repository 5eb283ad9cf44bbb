use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DatasetKind, DatasetMeta, Images, LabeledImageSet};
use crate::codec::ColorImage;
use crate::Result;

/// Random 2x2 RGB images. In the positive class (+1) the fourth pixel is
/// redrawn as a dark colour with every channel uniform in `0..=shade`, so
/// shade 0 gives black and shade 255 makes the classes identically distributed.
pub fn gen_color22(shade: u8, count: usize, seed: u64) -> Result<LabeledImageSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut images = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(count);
    for _ in 0..count {
        let mut pixels: Vec<[u8; 3]> = (0..4).map(|_| rng.gen()).collect();
        let positive: bool = rng.gen();
        if positive {
            pixels[3] = std::array::from_fn(|_| rng.gen_range(0..=shade));
        }
        images.push(ColorImage::new(1, pixels)?);
        labels.push(if positive { 1 } else { -1 });
    }
    LabeledImageSet::new(
        Images::Color(images),
        labels,
        DatasetMeta {
            source: DatasetKind::Color22,
            n: 1,
            seed,
            shade: Some(shade),
            corruption: None,
            digits: Vec::new(),
        },
    )
}

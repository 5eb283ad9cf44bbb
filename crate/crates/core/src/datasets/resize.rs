use crate::codec::GrayImage;
use crate::Result;

/// Bilinear resampling of a square `src_side × src_side` image.
///
/// Separable triangle filter on half-pixel centres: output index `o` is
/// centred at `(o + ½)·src/side` and source pixel `j` at `j + ½`. The filter
/// radius is `max(src/side, 1)`, so downscaling averages over the footprint
/// of each output pixel while upscaling reduces to plain bilinear blending of
/// the two nearest neighbours. Taps outside the image are dropped and the
/// remaining weights renormalised; the result is rounded half-to-even.
pub fn bilinear_resize(src: &[u8], src_side: usize, side: usize) -> Vec<u8> {
    assert_eq!(src.len(), src_side * src_side, "source is not square");
    assert!(src_side >= 1 && side >= 1);
    let weights = axis_weights(src_side, side);
    let mut rows = vec![0f64; side * src_side];
    for (o, taps) in weights.iter().enumerate() {
        for x in 0..src_side {
            rows[o * src_side + x] = taps
                .iter()
                .map(|&(j, w)| w * f64::from(src[j * src_side + x]))
                .sum();
        }
    }
    let mut out = Vec::with_capacity(side * side);
    for r in 0..side {
        for taps in &weights {
            let v: f64 = taps.iter().map(|&(j, w)| w * rows[r * src_side + j]).sum();
            out.push(v.round_ties_even().clamp(0.0, 255.0) as u8);
        }
    }
    out
}

fn axis_weights(src: usize, dst: usize) -> Vec<Vec<(usize, f64)>> {
    let scale = src as f64 / dst as f64;
    let support = scale.max(1.0);
    (0..dst)
        .map(|o| {
            let centre = (o as f64 + 0.5) * scale;
            let lo = (centre - support).floor().max(0.0) as usize;
            let hi = ((centre + support).ceil() as usize).min(src);
            let mut taps: Vec<(usize, f64)> = (lo..hi)
                .map(|j| (j, 1.0 - ((j as f64 + 0.5 - centre) / support).abs()))
                .filter(|&(_, w)| w > 0.0)
                .collect();
            let total: f64 = taps.iter().map(|&(_, w)| w).sum();
            for t in &mut taps {
                t.1 /= total;
            }
            taps
        })
        .collect()
}

pub fn resize_to_image(src: &[u8], src_side: usize, n: u32) -> Result<GrayImage> {
    crate::codec::check_n(n)?;
    GrayImage::new(n, bilinear_resize(src, src_side, 1 << n))
}

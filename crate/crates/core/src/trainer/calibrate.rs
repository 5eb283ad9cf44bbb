//! Post-training threshold search on the training set.
//!
//! Each search scans a 101-point grid and keeps the accuracy-maximising
//! value; among equally good grid points the median one is taken so the
//! decision boundary sits inside the optimal interval.

use crate::classifiers::{ac_classify, vqc_classify, vqc_classify_multi};

pub const CALIBRATION_GRID: usize = 101;

fn grid(lo: f64, hi: f64) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (CALIBRATION_GRID - 1) as f64;
    (0..CALIBRATION_GRID).map(move |k| lo + step * k as f64)
}

fn accuracy(scores: &[f64], labels: &[i32], predict: impl Fn(f64) -> i32) -> usize {
    scores
        .iter()
        .zip(labels)
        .filter(|(&s, &l)| predict(s) == l)
        .count()
}

fn median_best(candidates: impl Iterator<Item = (f64, usize)>) -> f64 {
    let all: Vec<(f64, usize)> = candidates.collect();
    let best = all.iter().map(|c| c.1).max().unwrap_or(0);
    let winners: Vec<f64> = all.iter().filter(|c| c.1 == best).map(|c| c.0).collect();
    winners[(winners.len() - 1) / 2]
}

/// VQC split `s` over `[-1, 1]`.
pub fn calibrate_split(scores: &[f64], labels: &[i32]) -> f64 {
    median_best(grid(-1.0, 1.0).map(|s| (s, accuracy(scores, labels, |e| vqc_classify(e, s)))))
}

/// Autoencoder fidelity threshold over `[0, 1]`.
pub fn calibrate_threshold(scores: &[f64], labels: &[i32]) -> f64 {
    median_best(grid(0.0, 1.0).map(|t| (t, accuracy(scores, labels, |f| ac_classify(f, t)))))
}

/// Three-class bounds `b₁ < b₂` from the interior grid points of `(-1, 1)`.
/// Ties go to the optimal pair nearest (L1) the centroid of all optimal pairs.
pub fn calibrate_bounds(scores: &[f64], labels: &[i32]) -> (f64, f64) {
    let points: Vec<f64> = grid(-1.0, 1.0).skip(1).take(CALIBRATION_GRID - 2).collect();
    let mut best = 0;
    let mut winners: Vec<(f64, f64)> = Vec::new();
    for (i, &b1) in points.iter().enumerate() {
        for &b2 in &points[i + 1..] {
            let acc = accuracy(scores, labels, |e| vqc_classify_multi(e, (b1, b2)));
            if acc > best {
                best = acc;
                winners.clear();
            }
            if acc == best {
                winners.push((b1, b2));
            }
        }
    }
    let k = winners.len() as f64;
    let c1 = winners.iter().map(|w| w.0).sum::<f64>() / k;
    let c2 = winners.iter().map(|w| w.1).sum::<f64>() / k;
    winners
        .into_iter()
        .min_by(|a, b| {
            let da = (a.0 - c1).abs() + (a.1 - c2).abs();
            let db = (b.0 - c1).abs() + (b.1 - c2).abs();
            da.total_cmp(&db)
        })
        .expect("grid is nonempty")
}

use std::f64::consts::FRAC_PI_2;

use super::{check_n, GrayImage};
use crate::sim::{CircuitProgram, GateOp, Statevector, C64};
use crate::{Error, Result};

/// Per-pixel angles `θ_i ∈ [0, π/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrqiAngles {
    n: u32,
    theta: Vec<f64>,
}

impl FrqiAngles {
    pub fn new(n: u32, theta: Vec<f64>) -> Result<Self> {
        check_n(n)?;
        if theta.len() != 1 << (2 * n) {
            return Err(Error::LengthMismatch {
                expected: 1 << (2 * n),
                got: theta.len(),
            });
        }
        if let Some(t) = theta.iter().find(|t| !(0.0..=FRAC_PI_2).contains(*t)) {
            return Err(Error::InvalidImage(format!(
                "FRQI angle {t} outside [0, π/2]"
            )));
        }
        Ok(Self { n, theta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn theta(&self) -> &[f64] {
        &self.theta
    }
}

/// Linear scaling of `[0, 255]` onto `[0, π/2]`.
pub fn frqi_angles(img: &GrayImage) -> FrqiAngles {
    let theta = img
        .pixels()
        .iter()
        .map(|&p| f64::from(p) / 255.0 * FRAC_PI_2)
        .collect();
    FrqiAngles { n: img.n(), theta }
}

/// Amplitude `cos θ_i / 2^n` at `(colour 0, i)` and `sin θ_i / 2^n` at `(colour 1, i)`.
pub fn frqi_encode(angles: &FrqiAngles) -> Statevector {
    let pos_bits = 2 * angles.n as usize;
    let num_pixels = 1usize << pos_bits;
    let scale = 1.0 / f64::from(1u32 << angles.n);
    let mut amps = vec![C64::new(0.0, 0.0); 2 * num_pixels];
    for (i, &t) in angles.theta.iter().enumerate() {
        let (s, c) = t.sin_cos();
        amps[i] = C64::new(c * scale, 0.0);
        amps[i | num_pixels] = C64::new(s * scale, 0.0);
    }
    Statevector::from_amplitudes(pos_bits + 1, amps).expect("FRQI amplitudes are normalized")
}

/// Pushes X on every qubit of `qubits` whose bit in `pattern` is 0.
pub(crate) fn push_zero_flips(
    prog: &mut CircuitProgram,
    qubits: &[usize],
    pattern: usize,
) -> Result<()> {
    for (k, &q) in qubits.iter().enumerate() {
        if pattern & (1 << k) == 0 {
            prog.push(GateOp::x(q))?;
        }
    }
    Ok(())
}

/// Hadamards on the position register, then one `C^{2n}RY(2θ_i)` per pixel
/// on the colour qubit selecting position `|i⟩`.
pub fn frqi_circuit(angles: &FrqiAngles) -> CircuitProgram {
    let pos_bits = 2 * angles.n as usize;
    let color = pos_bits;
    let position: Vec<usize> = (0..pos_bits).collect();
    let mut prog = CircuitProgram::new(pos_bits + 1);
    let build = |prog: &mut CircuitProgram| -> Result<()> {
        for &q in &position {
            prog.push(GateOp::h(q))?;
        }
        for (i, &t) in angles.theta.iter().enumerate() {
            push_zero_flips(prog, &position, i)?;
            prog.push(GateOp::controlled_ry(position.clone(), color, 2.0 * t))?;
            push_zero_flips(prog, &position, i)?;
        }
        Ok(())
    };
    build(&mut prog).expect("FRQI gates are valid by construction");
    prog
}

/// Analytic retrieval: `θ̂_i = atan2(√P(1, i), √P(0, i))`, rescaled and
/// rounded half-to-even.
pub fn frqi_decode(state: &Statevector, n: u32) -> Result<GrayImage> {
    check_n(n)?;
    let pos_bits = 2 * n as usize;
    if state.num_qubits() != pos_bits + 1 {
        return Err(Error::Decode(format!(
            "FRQI with n = {n} needs {} qubits, state has {}",
            pos_bits + 1,
            state.num_qubits()
        )));
    }
    let num_pixels = 1usize << pos_bits;
    let mut pixels = Vec::with_capacity(num_pixels);
    for i in 0..num_pixels {
        let p0 = state.probability(i);
        let p1 = state.probability(i | num_pixels);
        if p0 + p1 < 1e-14 {
            return Err(Error::Decode(format!(
                "position {i} has zero probability; not an FRQI state"
            )));
        }
        let theta = p1.sqrt().atan2(p0.sqrt());
        let v = (theta / FRAC_PI_2 * 255.0).round_ties_even();
        pixels.push(v.clamp(0.0, 255.0) as u8);
    }
    GrayImage::new(n, pixels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn amp(s: &Statevector, color: usize, i: usize, n: u32) -> f64 {
        let a = s.amplitudes()[i | (color << (2 * n))];
        assert!(a.im.abs() < 1e-15);
        a.re
    }

    #[test]
    fn angle_scaling() {
        let img = GrayImage::new(1, vec![0, 255, 128, 64]).unwrap();
        let a = frqi_angles(&img);
        assert_eq!(a.theta()[0], 0.0);
        assert!((a.theta()[1] - FRAC_PI_2).abs() < 1e-15);
        assert!((a.theta()[2] - 0.788_479).abs() < 1e-6);
    }

    #[test]
    fn encode_extremes() {
        let s = frqi_encode(&frqi_angles(&GrayImage::filled(1, 0).unwrap()));
        for i in 0..4 {
            assert!((amp(&s, 0, i, 1) - 0.5).abs() < 1e-15);
            assert_eq!(amp(&s, 1, i, 1), 0.0);
        }
        let s = frqi_encode(&frqi_angles(&GrayImage::filled(1, 255).unwrap()));
        for i in 0..4 {
            assert!(amp(&s, 0, i, 1).abs() < 1e-15);
            assert!((amp(&s, 1, i, 1) - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn encode_single_bright_pixel() {
        let img = GrayImage::new(1, vec![255, 0, 0, 0]).unwrap();
        let s = frqi_encode(&frqi_angles(&img));
        assert!((amp(&s, 1, 0, 1) - 0.5).abs() < 1e-15);
        assert!(amp(&s, 0, 0, 1).abs() < 1e-15);
        for i in 1..4 {
            assert!((amp(&s, 0, i, 1) - 0.5).abs() < 1e-15);
            assert_eq!(amp(&s, 1, i, 1), 0.0);
        }
    }

    #[test]
    fn circuit_on_blank_image_is_uniform() {
        let angles = frqi_angles(&GrayImage::filled(1, 0).unwrap());
        let out = frqi_circuit(&angles)
            .run(&Statevector::zero(3), &[])
            .unwrap();
        assert!(out.max_abs_diff(&frqi_encode(&angles)) < 1e-12);
    }

    #[test]
    fn circuit_matches_direct_encoding() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=2 {
            let pixels = (0..1 << (2 * n)).map(|_| rng.gen()).collect();
            let angles = frqi_angles(&GrayImage::new(n, pixels).unwrap());
            let out = frqi_circuit(&angles)
                .run(&Statevector::zero(2 * n as usize + 1), &[])
                .unwrap();
            assert!(out.max_abs_diff(&frqi_encode(&angles)) < 1e-8);
        }
    }

    #[test]
    fn decode_round_trips() {
        for v in [0u8, 255] {
            let img = GrayImage::filled(2, v).unwrap();
            assert_eq!(
                frqi_decode(&frqi_encode(&frqi_angles(&img)), 2).unwrap(),
                img
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let img = GrayImage::new(2, (0..16).map(|_| rng.gen()).collect()).unwrap();
        assert_eq!(
            frqi_decode(&frqi_encode(&frqi_angles(&img)), 2).unwrap(),
            img
        );
    }

    #[test]
    fn decode_rejects_wrong_shape_and_empty_positions() {
        let s = Statevector::zero(3);
        assert!(frqi_decode(&s, 2).is_err());
        // all weight on position 0, colour 0
        assert!(matches!(frqi_decode(&s, 1), Err(Error::Decode(_))));
    }

    #[test]
    fn angles_are_validated() {
        assert!(FrqiAngles::new(1, vec![0.0; 4]).is_ok());
        assert!(FrqiAngles::new(1, vec![0.0, 2.0, 0.0, 0.0]).is_err());
        assert!(FrqiAngles::new(1, vec![0.0; 3]).is_err());
    }
}

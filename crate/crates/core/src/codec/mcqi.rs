use std::f64::consts::FRAC_PI_2;

use super::frqi::push_zero_flips;
use super::{check_n, ColorImage};
use crate::sim::{CircuitProgram, GateOp, Statevector, C64};
use crate::{Error, Result};

const PAD: usize = 3;

/// Per-pixel channel angles `θ = arccos(p / 255)`, each in `[0, π/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct McqiAngles {
    n: u32,
    /// Indexed `[pixel][channel]`, channels R, G, B.
    theta: Vec<[f64; 3]>,
}

impl McqiAngles {
    pub fn new(n: u32, theta: Vec<[f64; 3]>) -> Result<Self> {
        check_n(n)?;
        if theta.len() != 1 << (2 * n) {
            return Err(Error::LengthMismatch {
                expected: 1 << (2 * n),
                got: theta.len(),
            });
        }
        if let Some(t) = theta
            .iter()
            .flatten()
            .find(|t| !(0.0..=FRAC_PI_2).contains(*t))
        {
            return Err(Error::InvalidImage(format!(
                "MCQI angle {t} outside [0, π/2]"
            )));
        }
        Ok(Self { n, theta })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn theta(&self) -> &[[f64; 3]] {
        &self.theta
    }

    pub fn channel(&self, c: usize) -> Vec<f64> {
        self.theta.iter().map(|t| t[c]).collect()
    }
}

pub fn mcqi_angles(img: &ColorImage) -> McqiAngles {
    let theta = img
        .pixels()
        .iter()
        .map(|rgb| rgb.map(|p| (f64::from(p) / 255.0).acos()))
        .collect();
    McqiAngles { n: img.n(), theta }
}

fn index(pos_bits: usize, i: usize, code: usize, value: usize) -> usize {
    i | (code << pos_bits) | (value << (pos_bits + 2))
}

/// Direct construction of the MCQI state. Each pixel block holds eight
/// amplitudes whose squares sum to 4, so the normalization is `1/2^{n+1}`.
pub fn mcqi_encode(angles: &McqiAngles) -> Statevector {
    let pos_bits = 2 * angles.n as usize;
    let scale = 1.0 / f64::from(1u32 << (angles.n + 1));
    let mut amps = vec![C64::new(0.0, 0.0); 1 << (pos_bits + 3)];
    for (i, rgb) in angles.theta.iter().enumerate() {
        for (code, &t) in rgb.iter().enumerate() {
            let (s, c) = t.sin_cos();
            amps[index(pos_bits, i, code, 0)] = C64::new(c * scale, 0.0);
            amps[index(pos_bits, i, code, 1)] = C64::new(s * scale, 0.0);
        }
        amps[index(pos_bits, i, PAD, 0)] = C64::new(scale, 0.0);
    }
    Statevector::from_amplitudes(pos_bits + 3, amps).expect("MCQI amplitudes are normalized")
}

/// Hadamards on position and channel-select qubits, then per pixel three
/// multi-controlled `RY(2θ)` on the value qubit, one per colour channel.
pub fn mcqi_circuit(angles: &McqiAngles) -> CircuitProgram {
    let pos_bits = 2 * angles.n as usize;
    let value = pos_bits + 2;
    // position qubits followed by the two channel-select qubits
    let controls: Vec<usize> = (0..pos_bits + 2).collect();
    let mut prog = CircuitProgram::new(pos_bits + 3);
    let build = |prog: &mut CircuitProgram| -> Result<()> {
        for &q in &controls {
            prog.push(GateOp::h(q))?;
        }
        for (i, rgb) in angles.theta.iter().enumerate() {
            for (code, &t) in rgb.iter().enumerate() {
                let pattern = i | (code << pos_bits);
                push_zero_flips(prog, &controls, pattern)?;
                prog.push(GateOp::controlled_ry(controls.clone(), value, 2.0 * t))?;
                push_zero_flips(prog, &controls, pattern)?;
            }
        }
        Ok(())
    };
    build(&mut prog).expect("MCQI gates are valid by construction");
    prog
}

/// Analytic retrieval of every channel: `p̂ = cos(atan2(|sin branch|, |cos branch|))`.
pub fn mcqi_decode(state: &Statevector, n: u32) -> Result<ColorImage> {
    check_n(n)?;
    let pos_bits = 2 * n as usize;
    if state.num_qubits() != pos_bits + 3 {
        return Err(Error::Decode(format!(
            "MCQI with n = {n} needs {} qubits, state has {}",
            pos_bits + 3,
            state.num_qubits()
        )));
    }
    let amps = state.amplitudes();
    let mut pixels = Vec::with_capacity(1 << pos_bits);
    for i in 0..1usize << pos_bits {
        let mut rgb = [0u8; 3];
        for (code, out) in rgb.iter_mut().enumerate() {
            let c = amps[index(pos_bits, i, code, 0)].norm();
            let s = amps[index(pos_bits, i, code, 1)].norm();
            if c * c + s * s < 1e-14 {
                return Err(Error::Decode(format!(
                    "pixel {i} channel {code} has zero probability; not an MCQI state"
                )));
            }
            let p = s.atan2(c).cos();
            *out = (p * 255.0).round_ties_even().clamp(0.0, 255.0) as u8;
        }
        pixels.push(rgb);
    }
    ColorImage::new(n, pixels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_image(n: u32, rng: &mut impl Rng) -> ColorImage {
        ColorImage::new(n, (0..1 << (2 * n)).map(|_| rng.gen()).collect()).unwrap()
    }

    #[test]
    fn angle_values() {
        let img = ColorImage::new(1, vec![[255, 0, 128]; 4]).unwrap();
        let a = mcqi_angles(&img);
        assert_eq!(a.theta()[0][0], 0.0);
        assert!((a.theta()[0][1] - FRAC_PI_2).abs() < 1e-15);
        assert!((a.theta()[0][2] - 1.044_932).abs() < 1e-6);
    }

    #[test]
    fn white_image_amplitudes() {
        let s = mcqi_encode(&mcqi_angles(&ColorImage::filled(1, [255; 3]).unwrap()));
        for i in 0..4 {
            for code in 0..4 {
                let a0 = s.amplitudes()[index(2, i, code, 0)];
                let a1 = s.amplitudes()[index(2, i, code, 1)];
                assert!((a0.re - 0.25).abs() < 1e-15);
                assert!(a1.norm() < 1e-15);
            }
        }
    }

    #[test]
    fn black_image_amplitudes() {
        let s = mcqi_encode(&mcqi_angles(&ColorImage::filled(1, [0; 3]).unwrap()));
        for i in 0..4 {
            for code in 0..3 {
                assert!((s.amplitudes()[index(2, i, code, 1)].re - 0.25).abs() < 1e-15);
                assert!(s.amplitudes()[index(2, i, code, 0)].norm() < 1e-15);
            }
            assert!((s.amplitudes()[index(2, i, PAD, 0)].re - 0.25).abs() < 1e-15);
            assert_eq!(s.amplitudes()[index(2, i, PAD, 1)].norm(), 0.0);
        }
    }

    #[test]
    fn circuits_match_direct_encoding() {
        let white = mcqi_angles(&ColorImage::filled(1, [255; 3]).unwrap());
        let out = mcqi_circuit(&white)
            .run(&Statevector::zero(5), &[])
            .unwrap();
        assert!(out.max_abs_diff(&mcqi_encode(&white)) < 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=2 {
            let angles = mcqi_angles(&random_image(n, &mut rng));
            let out = mcqi_circuit(&angles)
                .run(&Statevector::zero(2 * n as usize + 3), &[])
                .unwrap();
            assert!(out.max_abs_diff(&mcqi_encode(&angles)) < 1e-8);
        }
    }

    #[test]
    fn round_trips() {
        for rgb in [[0u8; 3], [255; 3]] {
            let img = ColorImage::filled(1, rgb).unwrap();
            assert_eq!(
                mcqi_decode(&mcqi_encode(&mcqi_angles(&img)), 1).unwrap(),
                img
            );
        }
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let img = random_image(1, &mut rng);
        assert_eq!(
            mcqi_decode(&mcqi_encode(&mcqi_angles(&img)), 1).unwrap(),
            img
        );
    }

    #[test]
    fn decode_errors() {
        assert!(mcqi_decode(&Statevector::zero(4), 1).is_err());
        assert!(matches!(
            mcqi_decode(&Statevector::zero(5), 1),
            Err(Error::Decode(_))
        ));
    }
}

#![allow(dead_code)]

use num_complex::Complex64 as C;
use proptest::prelude::*;
use qimc::sim::{GateKind, GateOp, Statevector};

pub type Mat = Vec<Vec<C>>;

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

pub fn identity(dim: usize) -> Mat {
    (0..dim)
        .map(|r| {
            (0..dim)
                .map(|k| if r == k { c(1.0) } else { c(0.0) })
                .collect()
        })
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![c(0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
        .collect()
}

pub fn apply(m: &Mat, v: &[C]) -> Vec<C> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// `ops[q]` acting on qubit `q`; qubit 0 is the rightmost Kronecker factor.
pub fn embed(num_qubits: usize, ops: &[(usize, Mat)]) -> Mat {
    let mut m = identity(1);
    for q in (0..num_qubits).rev() {
        let factor = ops
            .iter()
            .find(|(k, _)| *k == q)
            .map(|(_, u)| u.clone())
            .unwrap_or_else(|| identity(2));
        m = kron(&m, &factor);
    }
    m
}

pub fn h2() -> Mat {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    vec![vec![c(s), c(s)], vec![c(s), c(-s)]]
}

pub fn x2() -> Mat {
    vec![vec![c(0.0), c(1.0)], vec![c(1.0), c(0.0)]]
}

pub fn ry2(theta: f64) -> Mat {
    let (s, co) = (theta / 2.0).sin_cos();
    vec![vec![c(co), c(-s)], vec![c(s), c(co)]]
}

pub fn u3_2(theta: f64, phi: f64, lambda: f64) -> Mat {
    let (s, co) = (theta / 2.0).sin_cos();
    vec![
        vec![c(co), -C::from_polar(s, lambda)],
        vec![C::from_polar(s, phi), C::from_polar(co, phi + lambda)],
    ]
}

fn p0() -> Mat {
    vec![vec![c(1.0), c(0.0)], vec![c(0.0), c(0.0)]]
}

fn p1() -> Mat {
    vec![vec![c(0.0), c(0.0)], vec![c(0.0), c(1.0)]]
}

/// Full-register unitary of `op` built from Kronecker products:
/// `Σ_{control patterns ≠ 1…1} P ⊗ I + P_{1…1} ⊗ U`.
pub fn gate_matrix(op: &GateOp, num_qubits: usize) -> Mat {
    let u = match op.kind {
        GateKind::H => h2(),
        GateKind::X | GateKind::Cnot => x2(),
        GateKind::Ry => ry2(op.params[0]),
        GateKind::U3 => u3_2(op.params[0], op.params[1], op.params[2]),
    };
    let target = op.targets[0];
    let controls = &op.controls;
    let mut total = vec![vec![c(0.0); 1 << num_qubits]; 1 << num_qubits];
    for pattern in 0..(1usize << controls.len()) {
        let all_ones = pattern == (1 << controls.len()) - 1;
        let mut factors: Vec<(usize, Mat)> = controls
            .iter()
            .enumerate()
            .map(|(k, &q)| (q, if pattern >> k & 1 == 1 { p1() } else { p0() }))
            .collect();
        if all_ones {
            factors.push((target, u.clone()));
        }
        total = add(&total, &embed(num_qubits, &factors));
    }
    total
}

pub fn circuit_matrix(ops: &[GateOp], num_qubits: usize) -> Mat {
    ops.iter().fold(identity(1 << num_qubits), |acc, op| {
        matmul(&gate_matrix(op, num_qubits), &acc)
    })
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn state_strategy(num_qubits: usize) -> impl Strategy<Value = Statevector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << num_qubits)
        .prop_filter("non-degenerate", |v| {
            v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3
        })
        .prop_map(move |v| {
            Statevector::normalized(
                num_qubits,
                v.into_iter().map(|(a, b)| C::new(a, b)).collect(),
            )
            .unwrap()
        })
}

/// A valid gate on `num_qubits` qubits; RY may carry up to three controls.
pub fn gate_strategy(num_qubits: usize) -> impl Strategy<Value = GateOp> {
    let angle = -7.0f64..7.0;
    (
        0..5u8,
        Just((0..num_qubits).collect::<Vec<usize>>()).prop_shuffle(),
        0..4usize,
        angle.clone(),
        angle.clone(),
        angle,
    )
        .prop_map(move |(kind, qs, nctrl, a, b, g)| match kind {
            0 => GateOp::h(qs[0]),
            1 => GateOp::x(qs[0]),
            2 => {
                let k = nctrl.min(qs.len() - 1);
                GateOp::controlled_ry(qs[1..=k].to_vec(), qs[0], a)
            }
            3 => GateOp::u3(qs[0], a, b, g),
            _ if qs.len() >= 2 => GateOp::cnot(qs[1], qs[0]),
            _ => GateOp::ry(qs[0], a),
        })
}

pub fn random_pixels(len: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(any::<u8>(), len)
}

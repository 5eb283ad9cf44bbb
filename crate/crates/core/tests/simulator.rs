mod common;

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use common::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use qimc::sim::{
    apply_gate, expectation_and_gradient, expectation_z, parameter_shift_gradient,
    zero_projector_fidelity, CircuitProgram, GateOp, Observable, Statevector,
};
use qimc::Error;

fn amps(s: &Statevector) -> Vec<C> {
    s.amplitudes().to_vec()
}

#[test]
fn hadamard_on_zero() {
    let mut s = Statevector::zero(1);
    apply_gate(&mut s, &GateOp::h(0)).unwrap();
    assert!(max_diff(&amps(&s), &[c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)]) < 1e-15);
}

#[test]
fn ry_pi_flips_zero_to_one() {
    let mut s = Statevector::zero(1);
    apply_gate(&mut s, &GateOp::ry(0, PI)).unwrap();
    assert!((s.probability(1) - 1.0).abs() < 1e-15);
}

#[test]
fn cnot_flips_target_when_control_set() {
    let mut s = Statevector::basis(2, 0b01).unwrap();
    apply_gate(&mut s, &GateOp::cnot(0, 1)).unwrap();
    assert_eq!(s.probability(0b11), 1.0);
}

#[test]
fn invalid_gates_are_rejected() {
    let mut s = Statevector::zero(2);
    assert!(matches!(
        apply_gate(&mut s, &GateOp::h(2)),
        Err(Error::QubitOutOfRange {
            index: 2,
            num_qubits: 2
        })
    ));
    assert!(matches!(
        apply_gate(&mut s, &GateOp::cnot(1, 1)),
        Err(Error::OverlappingQubits(1))
    ));
    assert!(apply_gate(&mut s, &GateOp::controlled_ry(vec![0, 0], 1, 0.3)).is_err());
    let mut bad = GateOp::ry(0, 0.1);
    bad.params.push(0.2);
    assert!(apply_gate(&mut s, &bad).is_err());
    assert_eq!(s, Statevector::zero(2));
}

#[test]
fn empty_program_is_identity() {
    let s = Statevector::basis(3, 5).unwrap();
    let out = CircuitProgram::new(3).run(&s, &[]).unwrap();
    assert_eq!(out, s);
}

#[test]
fn zero_angle_slot_keeps_zero_state() {
    let mut prog = CircuitProgram::new(1);
    prog.push_trainable(GateOp::ry(0, 0.0)).unwrap();
    let out = prog.run(&Statevector::zero(1), &[0.0]).unwrap();
    assert_eq!(out, Statevector::zero(1));
    assert!(matches!(
        prog.run(&Statevector::zero(1), &[]),
        Err(Error::LengthMismatch {
            expected: 1,
            got: 0
        })
    ));
}

#[test]
fn bell_pair_from_h_then_cnot() {
    let mut prog = CircuitProgram::new(2);
    prog.push(GateOp::h(0)).unwrap();
    prog.push(GateOp::cnot(0, 1)).unwrap();
    let out = prog.run(&Statevector::zero(2), &[]).unwrap();
    let r = FRAC_1_SQRT_2;
    assert!(max_diff(&amps(&out), &[c(r), c(0.0), c(0.0), c(r)]) < 1e-15);
}

#[test]
fn expectation_z_examples() {
    assert_eq!(expectation_z(&Statevector::zero(1), 0).unwrap(), 1.0);
    assert_eq!(
        expectation_z(&Statevector::basis(1, 1).unwrap(), 0).unwrap(),
        -1.0
    );
    let mut plus = Statevector::zero(1);
    apply_gate(&mut plus, &GateOp::h(0)).unwrap();
    assert!(expectation_z(&plus, 0).unwrap().abs() < 1e-15);
    assert!(expectation_z(&plus, 1).is_err());
}

#[test]
fn zero_projector_examples() {
    assert_eq!(
        zero_projector_fidelity(&Statevector::zero(2), &[0, 1]).unwrap(),
        1.0
    );
    // qubit 0 in |1⟩, qubit 1 in (|0⟩ + |1⟩)/√2
    let r = FRAC_1_SQRT_2;
    let s = Statevector::from_amplitudes(2, vec![c(0.0), c(r), c(0.0), c(r)]).unwrap();
    assert_eq!(zero_projector_fidelity(&s, &[0]).unwrap(), 0.0);
    assert!((zero_projector_fidelity(&s, &[1]).unwrap() - 0.5).abs() < 1e-15);
    assert!(matches!(
        zero_projector_fidelity(&s, &[]),
        Err(Error::EmptyTrash)
    ));
}

#[test]
fn gradient_examples() {
    let empty = CircuitProgram::new(1);
    let g = parameter_shift_gradient(&empty, &[], &Statevector::zero(1), &Observable::PauliZ(0));
    assert!(g.unwrap().is_empty());

    let mut prog = CircuitProgram::new(1);
    prog.push_trainable(GateOp::ry(0, 0.0)).unwrap();
    let z = Observable::PauliZ(0);
    let g0 = parameter_shift_gradient(&prog, &[0.0], &Statevector::zero(1), &z).unwrap();
    assert!(g0[0].abs() < 1e-15);
    let (f, g) = expectation_and_gradient(&prog, &[FRAC_PI_2], &Statevector::zero(1), &z).unwrap();
    assert!(f.abs() < 1e-15);
    assert!((g[0] + 1.0).abs() < 1e-14);
    let fd = (FRAC_PI_2 + 1e-5).cos() - (FRAC_PI_2 - 1e-5).cos();
    assert!((g[0] - fd / 2e-5).abs() < 1e-8);
}

#[test]
fn controlled_slot_is_not_shiftable() {
    let mut prog = CircuitProgram::new(2);
    prog.push_trainable(GateOp::controlled_ry(vec![0], 1, 0.0))
        .unwrap();
    let r = parameter_shift_gradient(&prog, &[0.4], &Statevector::zero(2), &Observable::PauliZ(1));
    assert!(matches!(r, Err(Error::NotShiftable { slot: 0 })));
}

#[test]
fn controlled_ry_is_identity_off_the_control_pattern() {
    for n in 2..=5usize {
        for target in 0..n {
            let others: Vec<usize> = (0..n).filter(|&q| q != target).collect();
            for subset in 1..(1usize << others.len()) {
                let controls: Vec<usize> = others
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| subset >> k & 1 == 1)
                    .map(|(_, &q)| q)
                    .collect();
                let op = GateOp::controlled_ry(controls.clone(), target, 1.234);
                for basis in 0..(1usize << n) {
                    let mut s = Statevector::basis(n, basis).unwrap();
                    apply_gate(&mut s, &op).unwrap();
                    let active = controls.iter().all(|&q| basis >> q & 1 == 1);
                    if active {
                        assert!((s.probability(basis) - (0.617f64).cos().powi(2)).abs() < 1e-12);
                    } else {
                        assert_eq!(s, Statevector::basis(n, basis).unwrap());
                    }
                }
            }
        }
    }
}

fn random_program(num_qubits: usize) -> impl Strategy<Value = (CircuitProgram, Vec<f64>)> {
    prop::collection::vec((gate_strategy(num_qubits), any::<bool>()), 0..=50).prop_map(move |ops| {
        let mut prog = CircuitProgram::new(num_qubits);
        let mut params = Vec::new();
        for (op, trainable) in ops {
            let shiftable = op.controls.is_empty()
                && matches!(op.kind, qimc::sim::GateKind::Ry | qimc::sim::GateKind::U3);
            if trainable && shiftable {
                params.extend_from_slice(&op.params);
                prog.push_trainable(op).unwrap();
            } else {
                prog.push(op).unwrap();
            }
        }
        (prog, params)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn random_circuits_preserve_norm(
        (prog, params) in (1usize..=9).prop_flat_map(random_program)
    ) {
        let input = Statevector::zero(prog.num_qubits());
        let mut mixed = input.clone();
        for q in 0..prog.num_qubits() {
            apply_gate(&mut mixed, &GateOp::h(q)).unwrap();
        }
        for s in [input, mixed] {
            let out = prog.run(&s, &params).unwrap();
            prop_assert!((out.norm_sqr().sqrt() - 1.0).abs() <= 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gate_matches_dense_matrix(
        (state, op) in (1usize..=5).prop_flat_map(|n| (state_strategy(n), gate_strategy(n)))
    ) {
        let n = state.num_qubits();
        let expected = apply(&gate_matrix(&op, n), state.amplitudes());
        let mut s = state.clone();
        apply_gate(&mut s, &op).unwrap();
        prop_assert!(max_diff(s.amplitudes(), &expected) < 1e-12);
    }

    #[test]
    fn circuit_matches_dense_product(
        (state, ops) in (1usize..=4).prop_flat_map(|n| {
            (state_strategy(n), prop::collection::vec(gate_strategy(n), 0..12))
        })
    ) {
        let n = state.num_qubits();
        let mut prog = CircuitProgram::new(n);
        for op in &ops {
            prog.push(op.clone()).unwrap();
        }
        let out = prog.run(&state, &[]).unwrap();
        let expected = apply(&circuit_matrix(&ops, n), state.amplitudes());
        prop_assert!(max_diff(out.amplitudes(), &expected) < 1e-12);
    }

    #[test]
    fn gate_then_inverse_is_identity(
        (state, op) in (1usize..=6).prop_flat_map(|n| (state_strategy(n), gate_strategy(n)))
    ) {
        let mut s = state.clone();
        apply_gate(&mut s, &op).unwrap();
        apply_gate(&mut s, &op.inverse()).unwrap();
        prop_assert!(s.max_abs_diff(&state) < 1e-12);
    }

    #[test]
    fn observables_stay_in_range(
        (state, q, mask) in (1usize..=6).prop_flat_map(|n| (state_strategy(n), 0..n, 1usize..(1 << n)))
    ) {
        let ez = expectation_z(&state, q).unwrap();
        prop_assert!((-1.0..=1.0).contains(&ez));
        let trash: Vec<usize> = (0..state.num_qubits()).filter(|k| mask >> k & 1 == 1).collect();
        let f = zero_projector_fidelity(&state, &trash).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        let direct: f64 = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(i, _)| trash.iter().all(|&t| i >> t & 1 == 0))
            .map(|(_, a)| a.norm_sqr())
            .sum();
        prop_assert!((f - direct).abs() < 1e-12);
    }
}

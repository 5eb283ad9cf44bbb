use std::ffi::{c_char, CString};
use std::ptr;

use qimc_ffi::*;

fn last_error() -> String {
    unsafe {
        let len = qimc_last_error_message(ptr::null_mut(), 0);
        let mut buf = vec![0 as c_char; len + 1];
        qimc_last_error_message(buf.as_mut_ptr(), buf.len());
        let bytes: Vec<u8> = buf[..len].iter().map(|&c| c as u8).collect();
        String::from_utf8(bytes).unwrap()
    }
}

fn frqi(n: u32, pixels: &[u8]) -> *mut QimcStatevector {
    let mut out = ptr::null_mut();
    let st = unsafe { qimc_frqi_encode(n, pixels.as_ptr(), pixels.len(), &mut out) };
    assert_eq!(st, QimcStatus::Ok, "{}", last_error());
    assert!(!out.is_null());
    out
}

#[test]
fn frqi_round_trip_through_handles() {
    let pixels = [0u8, 17, 128, 255];
    let s = frqi(1, &pixels);
    let mut nq = 0usize;
    let mut back = [0u8; 4];
    unsafe {
        assert_eq!(qimc_statevector_num_qubits(s, &mut nq), QimcStatus::Ok);
        assert_eq!(qimc_frqi_decode(s, 1, back.as_mut_ptr(), 4), QimcStatus::Ok);
        qimc_statevector_free(s);
    }
    assert_eq!(nq, 3);
    assert_eq!(back, pixels);
}

#[test]
fn frqi_amplitudes_of_single_bright_pixel() {
    let s = frqi(1, &[255, 0, 0, 0]);
    let mut re = [0f64; 8];
    let mut im = [0f64; 8];
    unsafe {
        assert_eq!(
            qimc_statevector_amplitudes(s, re.as_mut_ptr(), im.as_mut_ptr(), 8),
            QimcStatus::Ok
        );
        let mut small = [0f64; 4];
        assert_eq!(
            qimc_statevector_amplitudes(s, small.as_mut_ptr(), small.as_mut_ptr(), 4),
            QimcStatus::BufferTooSmall
        );
        qimc_statevector_free(s);
    }
    let expected = [0.0, 0.5, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0];
    for (a, e) in re.iter().zip(expected) {
        assert!((a - e).abs() < 1e-12);
    }
    assert!(im.iter().all(|v| v.abs() < 1e-12));
}

#[test]
fn mcqi_round_trip() {
    let rgb: Vec<u8> = (0..12).map(|k| (k * 21) as u8).collect();
    let mut s = ptr::null_mut();
    let mut back = vec![0u8; 12];
    unsafe {
        assert_eq!(
            qimc_mcqi_encode(1, rgb.as_ptr(), 12, &mut s),
            QimcStatus::Ok
        );
        assert_eq!(
            qimc_mcqi_decode(s, 1, back.as_mut_ptr(), 12),
            QimcStatus::Ok
        );
        let mut nq = 0;
        qimc_statevector_num_qubits(s, &mut nq);
        assert_eq!(nq, 5);
        qimc_statevector_free(s);
    }
    assert_eq!(back, rgb);
}

#[test]
fn observables_and_classifiers() {
    let s = frqi(1, &[0, 0, 0, 0]);
    let mut ez = f64::NAN;
    let mut f = f64::NAN;
    unsafe {
        assert_eq!(qimc_expectation_z(s, 2, &mut ez), QimcStatus::Ok);
        assert!((ez - 1.0).abs() < 1e-12);
        let trash = [2usize];
        assert_eq!(
            qimc_zero_projector_fidelity(s, trash.as_ptr(), 1, &mut f),
            QimcStatus::Ok
        );
        assert!((f - 1.0).abs() < 1e-12);

        let params = vec![0.0; qimc_ansatz_num_params(3, 2)];
        assert_eq!(params.len(), 18);
        assert_eq!(
            qimc_vqc_ez(s, 2, 2, params.as_ptr(), params.len(), &mut ez),
            QimcStatus::Ok
        );
        assert!(ez.abs() < 1e-12, "ez = {ez}");
        assert_eq!(qimc_vqc_classify(ez, 0.0), -1);
        assert_eq!(qimc_vqc_classify(0.3, 0.0), 1);

        let params = vec![0.0; qimc_ansatz_num_params(3, 1)];
        assert_eq!(
            qimc_ac_fidelity(s, 1, 2, params.as_ptr(), params.len(), &mut f),
            QimcStatus::Ok
        );
        assert!((0.0..=1.0).contains(&f));
        assert_eq!(qimc_ac_classify(0.9, 0.5), 1);
        assert_eq!(qimc_ac_classify(0.5, 0.5), -1);

        assert_eq!(
            qimc_vqc_ez(s, 2, 2, params.as_ptr(), params.len(), &mut ez),
            QimcStatus::LengthMismatch
        );
        assert!(!last_error().is_empty());
        qimc_statevector_free(s);
    }
}

#[test]
fn errors_are_reported_not_panicked() {
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(
            qimc_frqi_encode(1, ptr::null(), 4, &mut out),
            QimcStatus::NullPointer
        );
        assert!(last_error().contains("pixels"));
        let px = [1u8, 2, 3];
        assert_ne!(
            qimc_frqi_encode(1, px.as_ptr(), 3, &mut out),
            QimcStatus::Ok
        );
        assert!(out.is_null());
        assert_eq!(
            qimc_expectation_z(ptr::null(), 0, &mut 0.0),
            QimcStatus::NullPointer
        );

        let re = [1.0, 1.0];
        let im = [0.0, 0.0];
        assert_eq!(
            qimc_statevector_new(1, re.as_ptr(), im.as_ptr(), 2, &mut out),
            QimcStatus::Numeric
        );
        let re = [0.6, 0.8];
        assert_eq!(
            qimc_statevector_new(1, re.as_ptr(), im.as_ptr(), 2, &mut out),
            QimcStatus::Ok
        );
        assert!(last_error().is_empty());
        let mut ez = 0.0;
        qimc_expectation_z(out, 0, &mut ez);
        assert!((ez - (0.36 - 0.64)).abs() < 1e-12);
        assert_eq!(
            qimc_expectation_z(out, 5, &mut ez),
            QimcStatus::InvalidArgument
        );
        qimc_statevector_free(out);
        qimc_statevector_free(ptr::null_mut());
    }
}

#[test]
fn truncated_error_message_is_terminated() {
    unsafe {
        qimc_frqi_encode(1, ptr::null(), 4, &mut ptr::null_mut());
        let mut buf = [1 as c_char; 5];
        let full = qimc_last_error_message(buf.as_mut_ptr(), buf.len());
        assert!(full > 4);
        assert_eq!(buf[4], 0);
    }
}

#[test]
fn run_experiment_and_load_report() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.toml");
    std::fs::write(
        &cfg,
        r#"
encoder = "frqi"
classifier = "vqc"

[dataset]
kind = "bas"
n = 1
seed = 4

[train]
epochs = 20
train_size = 20
validation_size = 50

[[sweep]]
field = "classifier"
values = ["vqc", "ac"]
"#,
    )
    .unwrap();
    let report_path = dir.path().join("out.jsonl");
    let cfg_c = CString::new(cfg.to_str().unwrap()).unwrap();
    let out_c = CString::new(report_path.to_str().unwrap()).unwrap();
    unsafe {
        let mut report = ptr::null_mut();
        let st = qimc_run_experiment(cfg_c.as_ptr(), out_c.as_ptr(), ptr::null(), &mut report);
        assert_eq!(st, QimcStatus::Ok, "{}", last_error());
        let mut len = 0;
        qimc_report_len(report, &mut len);
        assert_eq!(len, 2);
        let mut acc = f64::NAN;
        assert_eq!(
            qimc_report_validation_accuracy(report, 1, &mut acc),
            QimcStatus::Ok
        );
        assert!((0.0..=1.0).contains(&acc));
        assert_eq!(
            qimc_report_validation_accuracy(report, 2, &mut acc),
            QimcStatus::InvalidArgument
        );
        qimc_report_free(report);

        let mut loaded = ptr::null_mut();
        assert_eq!(
            qimc_report_load(out_c.as_ptr(), &mut loaded),
            QimcStatus::Ok
        );
        qimc_report_len(loaded, &mut len);
        assert_eq!(len, 2);
        qimc_report_free(loaded);

        let missing = CString::new(dir.path().join("nope.toml").to_str().unwrap()).unwrap();
        assert_eq!(
            qimc_run_experiment(missing.as_ptr(), ptr::null(), ptr::null(), &mut loaded),
            QimcStatus::Io
        );
    }
}

#[test]
fn version_is_a_c_string() {
    let v = unsafe { std::ffi::CStr::from_ptr(qimc_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qimc.h");
    assert!(std::path::Path::new(header).exists());
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping header compile");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use_header.c");
    std::fs::write(
        &src,
        format!(
            "#include \"{header}\"\nint main(void) {{\n  QimcStatevector *s = 0;\n  unsigned char px[4] = {{0, 1, 2, 3}};\n  QimcStatus st = qimc_frqi_encode(1, px, 4, &s);\n  qimc_statevector_free(s);\n  return st == QIMC_STATUS_OK ? 0 : 1;\n}}\n"
        ),
    )
    .unwrap();
    let status = std::process::Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only"])
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| {
            std::process::Command::new(c)
                .arg("--version")
                .output()
                .is_ok_and(|o| o.status.success())
        })
        .ok_or(())
}

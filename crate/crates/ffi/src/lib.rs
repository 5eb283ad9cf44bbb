//! C ABI over `qimc`.
//!
//! Every function returns a [`QimcStatus`]; on failure a description is kept
//! per thread and can be read with [`qimc_last_error_message`]. Objects are
//! opaque handles created by `qimc_*` constructors and released with the
//! matching `*_free`. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use qimc::classifiers::{ac_classify, vqc_classify, AcSpec, AnsatzSpec, Autoencoder, Vqc};
use qimc::codec::{
    frqi_angles, frqi_decode, frqi_encode, mcqi_angles, mcqi_decode, mcqi_encode, ColorImage,
    GrayImage,
};
use qimc::experiment::{run_experiment, ExperimentConfig, ExperimentReport, RunOptions};
use qimc::sim::{expectation_z, zero_projector_fidelity, Statevector, C64};
use qimc::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QimcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    LengthMismatch = 3,
    Io = 4,
    Format = 5,
    Config = 6,
    Numeric = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// Opaque statevector handle.
pub struct QimcStatevector(Statevector);

/// Opaque experiment report handle.
pub struct QimcReport(ExperimentReport);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

struct Failure(QimcStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::LengthMismatch { .. } => QimcStatus::LengthMismatch,
            Error::Io { .. } => QimcStatus::Io,
            Error::Format { .. } | Error::Decode(_) | Error::Json(_) => QimcStatus::Format,
            Error::Config(_) | Error::Dataset(_) | Error::UnknownCorruption { .. } => {
                QimcStatus::Config
            }
            Error::NotNormalized(_) | Error::NonFinite { .. } => QimcStatus::Numeric,
            _ => QimcStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn fail<T>(status: QimcStatus, msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure(status, msg.into()))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> QimcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            QimcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            QimcStatus::Panic
        }
    }
}

unsafe fn slice<'a, T>(ptr: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return fail(QimcStatus::NullPointer, format!("{what} is null"));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

unsafe fn slice_mut<'a, T>(ptr: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        return Ok(&mut []);
    }
    if ptr.is_null() {
        return fail(QimcStatus::NullPointer, format!("{what} is null"));
    }
    Ok(std::slice::from_raw_parts_mut(ptr, len))
}

unsafe fn handle<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Failure> {
    ptr.as_ref()
        .ok_or_else(|| Failure(QimcStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return fail(QimcStatus::NullPointer, format!("{what} is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn path(ptr: *const c_char, what: &str) -> Result<PathBuf, Failure> {
    if ptr.is_null() {
        return fail(QimcStatus::NullPointer, format!("{what} is null"));
    }
    match CStr::from_ptr(ptr).to_str() {
        Ok(s) => Ok(PathBuf::from(s)),
        Err(_) => fail(QimcStatus::InvalidArgument, format!("{what} is not UTF-8")),
    }
}

fn check_len(expected: usize, got: usize, what: &str) -> Result<(), Failure> {
    if expected != got {
        return fail(
            QimcStatus::LengthMismatch,
            format!("{what}: expected {expected} elements, got {got}"),
        );
    }
    Ok(())
}

fn boxed(state: Statevector) -> *mut QimcStatevector {
    Box::into_raw(Box::new(QimcStatevector(state)))
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len` bytes) and returns the full message length excluding
/// the terminator. Pass a null `buf` to query the length.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qimc_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr().cast::<c_char>(), buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qimc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a statevector from `2^num_qubits` real and imaginary parts. The
/// amplitudes must have unit norm.
///
/// # Safety
/// `re` and `im` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_statevector_new(
    num_qubits: usize,
    re: *const f64,
    im: *const f64,
    len: usize,
    out: *mut *mut QimcStatevector,
) -> QimcStatus {
    guard(|| {
        let re = slice(re, len, "re")?;
        let im = slice(im, len, "im")?;
        let amps: Vec<C64> = re.iter().zip(im).map(|(&a, &b)| C64::new(a, b)).collect();
        let state = Statevector::from_amplitudes(num_qubits, amps)?;
        write(out, boxed(state), "out")
    })
}

/// # Safety
/// `state` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qimc_statevector_free(state: *mut QimcStatevector) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_statevector_num_qubits(
    state: *const QimcStatevector,
    out: *mut usize,
) -> QimcStatus {
    guard(|| write(out, handle(state, "state")?.0.num_qubits(), "out"))
}

/// Copies the amplitudes into `re` / `im`, each of length `2^num_qubits`.
///
/// # Safety
/// `state` must be a live handle; `re` and `im` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qimc_statevector_amplitudes(
    state: *const QimcStatevector,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> QimcStatus {
    guard(|| {
        let amps = handle(state, "state")?.0.amplitudes();
        if len < amps.len() {
            return fail(
                QimcStatus::BufferTooSmall,
                format!("need {} amplitudes, buffer holds {len}", amps.len()),
            );
        }
        let re = slice_mut(re, amps.len(), "re")?;
        let im = slice_mut(im, amps.len(), "im")?;
        for (k, a) in amps.iter().enumerate() {
            re[k] = a.re;
            im[k] = a.im;
        }
        Ok(())
    })
}

/// FRQI state of a `2^n × 2^n` grayscale image given row-major.
///
/// # Safety
/// `pixels` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_frqi_encode(
    n: u32,
    pixels: *const u8,
    len: usize,
    out: *mut *mut QimcStatevector,
) -> QimcStatus {
    guard(|| {
        let img = GrayImage::new(n, slice(pixels, len, "pixels")?.to_vec())?;
        write(out, boxed(frqi_encode(&frqi_angles(&img))), "out")
    })
}

/// # Safety
/// `state` must be a live handle; `pixels` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qimc_frqi_decode(
    state: *const QimcStatevector,
    n: u32,
    pixels: *mut u8,
    len: usize,
) -> QimcStatus {
    guard(|| {
        let img = frqi_decode(&handle(state, "state")?.0, n)?;
        check_len(img.pixels().len(), len, "pixels")?;
        slice_mut(pixels, len, "pixels")?.copy_from_slice(img.pixels());
        Ok(())
    })
}

/// MCQI state of a `2^n × 2^n` RGB image given as interleaved `r, g, b`
/// bytes in row-major pixel order (`len = 3·4^n`).
///
/// # Safety
/// `rgb` must be valid for `len` reads; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_mcqi_encode(
    n: u32,
    rgb: *const u8,
    len: usize,
    out: *mut *mut QimcStatevector,
) -> QimcStatus {
    guard(|| {
        let bytes = slice(rgb, len, "rgb")?;
        if !len.is_multiple_of(3) {
            return fail(
                QimcStatus::LengthMismatch,
                "rgb length is not a multiple of 3",
            );
        }
        let pixels = bytes.chunks_exact(3).map(|c| [c[0], c[1], c[2]]).collect();
        let img = ColorImage::new(n, pixels)?;
        write(out, boxed(mcqi_encode(&mcqi_angles(&img))), "out")
    })
}

/// # Safety
/// `state` must be a live handle; `rgb` must be valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qimc_mcqi_decode(
    state: *const QimcStatevector,
    n: u32,
    rgb: *mut u8,
    len: usize,
) -> QimcStatus {
    guard(|| {
        let img = mcqi_decode(&handle(state, "state")?.0, n)?;
        check_len(3 * img.pixels().len(), len, "rgb")?;
        let out = slice_mut(rgb, len, "rgb")?;
        for (dst, px) in out.chunks_exact_mut(3).zip(img.pixels()) {
            dst.copy_from_slice(px);
        }
        Ok(())
    })
}

/// # Safety
/// `state` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_expectation_z(
    state: *const QimcStatevector,
    qubit: usize,
    out: *mut f64,
) -> QimcStatus {
    guard(|| {
        let v = expectation_z(&handle(state, "state")?.0, qubit)?;
        write(out, v, "out")
    })
}

/// Probability that every qubit in `trash` reads 0.
///
/// # Safety
/// `state` must be a live handle; `trash` valid for `len` reads; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_zero_projector_fidelity(
    state: *const QimcStatevector,
    trash: *const usize,
    len: usize,
    out: *mut f64,
) -> QimcStatus {
    guard(|| {
        let v = zero_projector_fidelity(&handle(state, "state")?.0, slice(trash, len, "trash")?)?;
        write(out, v, "out")
    })
}

/// Number of angles of a `layers`-deep ansatz on `num_qubits` qubits.
#[no_mangle]
pub extern "C" fn qimc_ansatz_num_params(num_qubits: usize, layers: usize) -> usize {
    3 * num_qubits * layers
}

/// `⟨Z⟩` on `readout` after the variational ansatz.
///
/// # Safety
/// `state` must be a live handle; `params` valid for `len` reads; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_vqc_ez(
    state: *const QimcStatevector,
    layers: usize,
    readout: usize,
    params: *const f64,
    len: usize,
    out: *mut f64,
) -> QimcStatus {
    guard(|| {
        let state = &handle(state, "state")?.0;
        let vqc = Vqc::new(AnsatzSpec::new(state.num_qubits(), layers), readout)?;
        let v = vqc.ez(state, slice(params, len, "params")?)?;
        write(out, v, "out")
    })
}

/// `-1` if `ez <= split`, else `+1`.
#[no_mangle]
pub extern "C" fn qimc_vqc_classify(ez: f64, split: f64) -> i32 {
    vqc_classify(ez, split)
}

/// Trash-zero fidelity after the autoencoder ansatz; every qubit except
/// `latent` is trash.
///
/// # Safety
/// `state` must be a live handle; `params` valid for `len` reads; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_ac_fidelity(
    state: *const QimcStatevector,
    layers: usize,
    latent: usize,
    params: *const f64,
    len: usize,
    out: *mut f64,
) -> QimcStatus {
    guard(|| {
        let state = &handle(state, "state")?.0;
        let ac = Autoencoder::new(AcSpec::new(state.num_qubits(), layers, latent)?)?;
        let v = ac.fidelity(state, slice(params, len, "params")?)?;
        write(out, v, "out")
    })
}

/// `+1` if `fidelity > threshold`, else `-1`.
#[no_mangle]
pub extern "C" fn qimc_ac_classify(fidelity: f64, threshold: f64) -> i32 {
    ac_classify(fidelity, threshold)
}

/// Runs the experiment described by the TOML file at `config_path`.
/// `output_path` overrides the configured report file and `data_root` the
/// directory for relative data paths; both may be null.
///
/// # Safety
/// Strings must be null or NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_run_experiment(
    config_path: *const c_char,
    output_path: *const c_char,
    data_root: *const c_char,
    out: *mut *mut QimcReport,
) -> QimcStatus {
    guard(|| {
        let cfg = ExperimentConfig::load(&path(config_path, "config_path")?)?;
        let mut opts = RunOptions::from_env();
        if !output_path.is_null() {
            opts.output = Some(path(output_path, "output_path")?);
        }
        if !data_root.is_null() {
            opts.data_root = Some(path(data_root, "data_root")?);
        }
        let report = run_experiment(&cfg, &opts)?;
        write(out, Box::into_raw(Box::new(QimcReport(report))), "out")
    })
}

/// Loads a JSON-lines report.
///
/// # Safety
/// `report_path` must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_report_load(
    report_path: *const c_char,
    out: *mut *mut QimcReport,
) -> QimcStatus {
    guard(|| {
        let report = ExperimentReport::load(&path(report_path, "report_path")?)?;
        write(out, Box::into_raw(Box::new(QimcReport(report))), "out")
    })
}

/// # Safety
/// `report` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qimc_report_free(report: *mut QimcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_report_len(report: *const QimcReport, out: *mut usize) -> QimcStatus {
    guard(|| write(out, handle(report, "report")?.0.len(), "out"))
}

/// Validation accuracy of row `row`.
///
/// # Safety
/// `report` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qimc_report_validation_accuracy(
    report: *const QimcReport,
    row: usize,
    out: *mut f64,
) -> QimcStatus {
    guard(|| {
        let rows = &handle(report, "report")?.0.rows;
        match rows.get(row) {
            Some(r) => write(out, r.validation_accuracy, "out"),
            None => fail(
                QimcStatus::InvalidArgument,
                format!("row {row} out of range for {} rows", rows.len()),
            ),
        }
    })
}

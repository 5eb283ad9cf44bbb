#ifndef QIMC_H
#define QIMC_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

// Result code of every fallible call.
typedef enum QimcStatus {
  QIMC_STATUS_OK = 0,
  QIMC_STATUS_NULL_POINTER = 1,
  QIMC_STATUS_INVALID_ARGUMENT = 2,
  QIMC_STATUS_LENGTH_MISMATCH = 3,
  QIMC_STATUS_IO = 4,
  QIMC_STATUS_FORMAT = 5,
  QIMC_STATUS_CONFIG = 6,
  QIMC_STATUS_NUMERIC = 7,
  QIMC_STATUS_BUFFER_TOO_SMALL = 8,
  QIMC_STATUS_PANIC = 9,
} QimcStatus;

// Opaque experiment report handle.
typedef struct QimcReport QimcReport;

// Opaque statevector handle.
typedef struct QimcStatevector QimcStatevector;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to `len` bytes) and returns the full message length excluding
// the terminator. Pass a null `buf` to query the length.
//
// # Safety
// `buf` must be null or valid for `len` bytes.
size_t qimc_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *qimc_version(void);

// Builds a statevector from `2^num_qubits` real and imaginary parts. The
// amplitudes must have unit norm.
//
// # Safety
// `re` and `im` must be valid for `len` reads; `out` must be writable.
enum QimcStatus qimc_statevector_new(size_t num_qubits,
                                     const double *re,
                                     const double *im,
                                     size_t len,
                                     struct QimcStatevector **out);

// # Safety
// `state` must be null or a handle from this library not yet freed.
void qimc_statevector_free(struct QimcStatevector *state);

// # Safety
// `state` must be a live handle; `out` must be writable.
enum QimcStatus qimc_statevector_num_qubits(const struct QimcStatevector *state, size_t *out);

// Copies the amplitudes into `re` / `im`, each of length `2^num_qubits`.
//
// # Safety
// `state` must be a live handle; `re` and `im` must be valid for `len` writes.
enum QimcStatus qimc_statevector_amplitudes(const struct QimcStatevector *state,
                                            double *re,
                                            double *im,
                                            size_t len);

// FRQI state of a `2^n × 2^n` grayscale image given row-major.
//
// # Safety
// `pixels` must be valid for `len` reads; `out` must be writable.
enum QimcStatus qimc_frqi_encode(uint32_t n,
                                 const uint8_t *pixels,
                                 size_t len,
                                 struct QimcStatevector **out);

// # Safety
// `state` must be a live handle; `pixels` must be valid for `len` writes.
enum QimcStatus qimc_frqi_decode(const struct QimcStatevector *state,
                                 uint32_t n,
                                 uint8_t *pixels,
                                 size_t len);

// MCQI state of a `2^n × 2^n` RGB image given as interleaved `r, g, b`
// bytes in row-major pixel order (`len = 3·4^n`).
//
// # Safety
// `rgb` must be valid for `len` reads; `out` must be writable.
enum QimcStatus qimc_mcqi_encode(uint32_t n,
                                 const uint8_t *rgb,
                                 size_t len,
                                 struct QimcStatevector **out);

// # Safety
// `state` must be a live handle; `rgb` must be valid for `len` writes.
enum QimcStatus qimc_mcqi_decode(const struct QimcStatevector *state,
                                 uint32_t n,
                                 uint8_t *rgb,
                                 size_t len);

// # Safety
// `state` must be a live handle; `out` must be writable.
enum QimcStatus qimc_expectation_z(const struct QimcStatevector *state, size_t qubit, double *out);

// Probability that every qubit in `trash` reads 0.
//
// # Safety
// `state` must be a live handle; `trash` valid for `len` reads; `out` writable.
enum QimcStatus qimc_zero_projector_fidelity(const struct QimcStatevector *state,
                                             const size_t *trash,
                                             size_t len,
                                             double *out);

// Number of angles of a `layers`-deep ansatz on `num_qubits` qubits.
size_t qimc_ansatz_num_params(size_t num_qubits, size_t layers);

// `⟨Z⟩` on `readout` after the variational ansatz.
//
// # Safety
// `state` must be a live handle; `params` valid for `len` reads; `out` writable.
enum QimcStatus qimc_vqc_ez(const struct QimcStatevector *state,
                            size_t layers,
                            size_t readout,
                            const double *params,
                            size_t len,
                            double *out);

// `-1` if `ez <= split`, else `+1`.
int32_t qimc_vqc_classify(double ez, double split);

// Trash-zero fidelity after the autoencoder ansatz; every qubit except
// `latent` is trash.
//
// # Safety
// `state` must be a live handle; `params` valid for `len` reads; `out` writable.
enum QimcStatus qimc_ac_fidelity(const struct QimcStatevector *state,
                                 size_t layers,
                                 size_t latent,
                                 const double *params,
                                 size_t len,
                                 double *out);

// `+1` if `fidelity > threshold`, else `-1`.
int32_t qimc_ac_classify(double fidelity, double threshold);

// Runs the experiment described by the TOML file at `config_path`.
// `output_path` overrides the configured report file and `data_root` the
// directory for relative data paths; both may be null.
//
// # Safety
// Strings must be null or NUL-terminated; `out` must be writable.
enum QimcStatus qimc_run_experiment(const char *config_path,
                                    const char *output_path,
                                    const char *data_root,
                                    struct QimcReport **out);

// Loads a JSON-lines report.
//
// # Safety
// `report_path` must be NUL-terminated; `out` must be writable.
enum QimcStatus qimc_report_load(const char *report_path, struct QimcReport **out);

// # Safety
// `report` must be null or a handle from this library not yet freed.
void qimc_report_free(struct QimcReport *report);

// # Safety
// `report` must be a live handle; `out` must be writable.
enum QimcStatus qimc_report_len(const struct QimcReport *report, size_t *out);

// Validation accuracy of row `row`.
//
// # Safety
// `report` must be a live handle; `out` must be writable.
enum QimcStatus qimc_report_validation_accuracy(const struct QimcReport *report,
                                                size_t row,
                                                double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QIMC_H */

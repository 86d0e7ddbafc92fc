#ifndef TWOMODE_H
#define TWOMODE_H

#include <stdbool.h>
#include <stddef.h>

/*
 Result code of every fallible call.
 */
typedef enum TmStatus {
  TM_STATUS_OK = 0,
  TM_STATUS_NULL_POINTER = 1,
  TM_STATUS_INVALID_ARGUMENT = 2,
  TM_STATUS_UNSTABLE_REGIME = 3,
  TM_STATUS_DEGENERATE_MODES = 4,
  TM_STATUS_NUMERICAL_ERROR = 5,
  TM_STATUS_NO_SIGN_CHANGE = 6,
  TM_STATUS_BUFFER_TOO_SMALL = 7,
  TM_STATUS_PANIC = 8,
} TmStatus;

/*
 Column selector for [`tm_series_copy`].
 */
typedef enum TmColumn {
  TM_COLUMN_T = 0,
  TM_COLUMN_E_RAW = 1,
  TM_COLUMN_E = 2,
  TM_COLUMN_VAR_Q1 = 3,
  TM_COLUMN_VAR_P1 = 4,
  TM_COLUMN_VAR_Q2 = 5,
  TM_COLUMN_VAR_P2 = 6,
  TM_COLUMN_MIN_PRINCIPAL1 = 7,
  TM_COLUMN_MIN_PRINCIPAL2 = 8,
  TM_COLUMN_DET_V = 9,
} TmColumn;

/*
 A sampled entanglement/squeezing time series.
 */
typedef struct TmSeries TmSeries;

/*
 A parameter set with its precomputed normal modes and an initial state.
 */
typedef struct TmSimulator TmSimulator;

typedef struct TmEntanglement {
  double e_raw;
  double e;
  double script_a;
  double script_b;
  double det_v;
  bool separable;
} TmEntanglement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Create a simulator for (ω₁, ω₂, g₁, g₂) in the vacuum state.

 A degenerate parameter set falls back to the matrix-exponential
 propagator; an unstable one is rejected.

 # Safety
 `out` must be a valid pointer to writable storage for one pointer.
 */
enum TmStatus tm_simulator_new(double omega1,
                               double omega2,
                               double g1,
                               double g2,
                               struct TmSimulator **out);

/*
 # Safety
 `sim` must be null or a pointer returned by [`tm_simulator_new`] that has
 not been freed.
 */
void tm_simulator_free(struct TmSimulator *sim);

/*
 Set the displaced thermal initial state.

 # Safety
 `sim` must be a live simulator handle.
 */
enum TmStatus tm_simulator_set_initial(struct TmSimulator *sim,
                                       double alpha1_re,
                                       double alpha1_im,
                                       double alpha2_re,
                                       double alpha2_im,
                                       double n1,
                                       double n2);

/*
 Write Ω₁ ≥ Ω₂ to `out[0..2]`.

 # Safety
 `sim` must be a live simulator handle and `out` must point to 2 doubles.
 */
enum TmStatus tm_simulator_eigenfrequencies(const struct TmSimulator *sim, double *out);

/*
 Covariance matrix (16 doubles, row-major) and optionally the mean vector
 (4 doubles) at time `t`.

 # Safety
 `sim` must be a live simulator handle, `out_v` must point to 16 doubles
 and `out_mean` must be null or point to 4 doubles.
 */
enum TmStatus tm_simulator_covariance(const struct TmSimulator *sim,
                                      double t,
                                      double *out_v,
                                      double *out_mean);

/*
 Logarithmic negativity at time `t`.

 # Safety
 `sim` must be a live simulator handle and `out` a valid pointer.
 */
enum TmStatus tm_simulator_entanglement(const struct TmSimulator *sim,
                                        double t,
                                        struct TmEntanglement *out);

/*
 Sample the time series on `0, dt, …, t_max`.

 # Safety
 `sim` must be a live simulator handle and `out` a valid pointer.
 */
enum TmStatus tm_simulator_time_series(const struct TmSimulator *sim,
                                       double t_max,
                                       double dt,
                                       struct TmSeries **out);

/*
 Critical common occupation n₁ = n₂ = n above which no entanglement forms
 within `t_max`. Coherent amplitudes of the current initial state are kept.

 # Safety
 `sim` must be a live simulator handle and `out` a valid pointer.
 */
enum TmStatus tm_simulator_critical_occupation(const struct TmSimulator *sim,
                                               double t_max,
                                               double dt,
                                               double tol,
                                               double *out);

/*
 Number of samples; 0 for a null handle.

 # Safety
 `series` must be null or a live series handle.
 */
size_t tm_series_len(const struct TmSeries *series);

/*
 Copy one column into `buf`, which must hold at least
 [`tm_series_len`] doubles (`TM_STATUS_BUFFER_TOO_SMALL` otherwise).

 # Safety
 `series` must be a live series handle and `buf` must point to `len`
 writable doubles.
 */
enum TmStatus tm_series_copy(const struct TmSeries *series,
                             enum TmColumn column,
                             double *buf,
                             size_t len);

/*
 # Safety
 `series` must be null or a live series handle.
 */
void tm_series_free(struct TmSeries *series);

/*
 Copy the calling thread's last error message into `buf` (NUL-terminated,
 truncated to `len`). Returns the full message length excluding the NUL,
 so a caller can size a buffer with a first call using `len = 0`.

 # Safety
 `buf` must be null or point to `len` writable bytes.
 */
size_t tm_last_error_message(char *buf, size_t len);

/*
 Static name of a status code, e.g. `"TM_STATUS_UNSTABLE_REGIME"`.
 */
const char *tm_status_name(enum TmStatus status);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWOMODE_H */

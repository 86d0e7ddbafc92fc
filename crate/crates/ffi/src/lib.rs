//! C ABI for the twomode simulator.
//!
//! Objects are opaque heap handles created by `*_new` and released by the
//! matching `*_free`. Every fallible call returns a [`TmStatus`]; after a
//! non-`TM_STATUS_OK` status the thread-local [`tm_last_error_message`] holds a
//! human-readable description. Panics never cross the boundary: they are
//! caught and reported as `TM_STATUS_PANIC`.
//!
//! Matrices are written row-major. Quadrature ordering is (q₁, p₁, q₂, p₂).

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use twomode::control::{
    critical_occupation, entanglement_time_series_with, evolve_covariance, TimeSeries,
};
use twomode::metrics::log_negativity;
use twomode::model::{eigenfrequencies, Evolver};
use twomode::numerics::linalg::C64;
use twomode::{Error, InitialState, ModelParams};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    UnstableRegime = 3,
    DegenerateModes = 4,
    NumericalError = 5,
    NoSignChange = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Column selector for [`tm_series_copy`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmColumn {
    T = 0,
    ERaw = 1,
    E = 2,
    VarQ1 = 3,
    VarP1 = 4,
    VarQ2 = 5,
    VarP2 = 6,
    MinPrincipal1 = 7,
    MinPrincipal2 = 8,
    DetV = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TmEntanglement {
    pub e_raw: f64,
    pub e: f64,
    pub script_a: f64,
    pub script_b: f64,
    pub det_v: f64,
    pub separable: bool,
}

/// A parameter set with its precomputed normal modes and an initial state.
pub struct TmSimulator {
    params: ModelParams,
    evolver: Evolver,
    state: InitialState,
}

/// A sampled entanglement/squeezing time series.
pub struct TmSeries {
    series: TimeSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(err: &Error) -> TmStatus {
    match err.root() {
        Error::UnstableRegime { .. } => TmStatus::UnstableRegime,
        Error::DegenerateModes { .. } => TmStatus::DegenerateModes,
        Error::NoSignChange(_) => TmStatus::NoSignChange,
        Error::NonFiniteInput { .. }
        | Error::NonPositiveFrequency { .. }
        | Error::NegativeCoupling { .. }
        | Error::NegativeOccupation { .. }
        | Error::NegativeTemperature(_)
        | Error::NonFiniteTime(_)
        | Error::InvalidArgument(_) => TmStatus::InvalidArgument,
        _ => TmStatus::NumericalError,
    }
}

/// Run `f`, translating errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), (TmStatus, String)>) -> TmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            TmStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            TmStatus::Panic
        }
    }
}

fn lib<T>(r: twomode::Result<T>) -> Result<T, (TmStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (TmStatus, String) {
    (TmStatus::NullPointer, format!("null pointer: {what}"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (TmStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (TmStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Create a simulator for (ω₁, ω₂, g₁, g₂) in the vacuum state.
///
/// A degenerate parameter set falls back to the matrix-exponential
/// propagator; an unstable one is rejected.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn tm_simulator_new(
    omega1: f64,
    omega2: f64,
    g1: f64,
    g2: f64,
    out: *mut *mut TmSimulator,
) -> TmStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = ptr::null_mut();
        let params = lib(ModelParams::new(omega1, omega2, g1, g2))?;
        let evolver = lib(Evolver::with_degenerate_fallback(&params))?;
        *out = Box::into_raw(Box::new(TmSimulator {
            params,
            evolver,
            state: InitialState::vacuum(),
        }));
        Ok(())
    })
}

/// # Safety
/// `sim` must be null or a pointer returned by [`tm_simulator_new`] that has
/// not been freed.
#[no_mangle]
pub unsafe extern "C" fn tm_simulator_free(sim: *mut TmSimulator) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Set the displaced thermal initial state.
///
/// # Safety
/// `sim` must be a live simulator handle.
#[no_mangle]
pub unsafe extern "C" fn tm_simulator_set_initial(
    sim: *mut TmSimulator,
    alpha1_re: f64,
    alpha1_im: f64,
    alpha2_re: f64,
    alpha2_im: f64,
    n1: f64,
    n2: f64,
) -> TmStatus {
    guard(|| {
        let sim = deref_mut(sim, "sim")?;
        sim.state = lib(InitialState::new(
            C64::new(alpha1_re, alpha1_im),
            C64::new(alpha2_re, alpha2_im),
            n1,
            n2,
        ))?;
        Ok(())
    })
}

/// Write Ω₁ ≥ Ω₂ to `out[0..2]`.
///
/// # Safety
/// `sim` must be a live simulator handle and `out` must point to 2 doubles.
#[no_mangle]
pub unsafe extern "C" fn tm_simulator_eigenfrequencies(
    sim: *const TmSimulator,
    out: *mut f64,
) -> TmStatus {
    guard(|| {
        let sim = deref(sim, "sim")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let f = lib(eigenfrequencies(&sim.params))?;
        std::slice::from_raw_parts_mut(out, 2).copy_from_slice(&f.omega);
        Ok(())
    })
}

/// Covariance matrix (16 doubles, row-major) and optionally the mean vector
/// (4 doubles) at time `t`.
///
/// # Safety
/// `sim` must be a live simulator handle, `out_v` must point to 16 doubles
/// and `out_mean` must be null or point to 4 doubles.
#[no_mangle]
pub unsafe extern "C" fn tm_simulator_covariance(
    sim: *const TmSimulator,
    t: f64,
    out_v: *mut f64,
    out_mean: *mut f64,
) -> TmStatus {
    guard(|| {
        let sim = deref(sim, "sim")?;
        if out_v.is_null() {
            return Err(null("out_v"));
        }
        let cov = lib(evolve_covariance(&sim.evolver, &sim.state, t))?;
        let v = std::slice::from_raw_parts_mut(out_v, 16);
        for r in 0..4 {
            for c in 0..4 {
                v[4 * r + c] = cov.v[(r, c)];
            }
        }
        if !out_mean.is_null() {
            std::slice::from_raw_parts_mut(out_mean, 4).copy_from_slice(cov.mean.as_slice());
        }
        Ok(())
    })
}

/// Logarithmic negativity at time `t`.
///
/// # Safety
/// `sim` must be a live simulator handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tm_simulator_entanglement(
    sim: *const TmSimulator,
    t: f64,
    out: *mut TmEntanglement,
) -> TmStatus {
    guard(|| {
        let sim = deref(sim, "sim")?;
        let out = deref_mut(out, "out")?;
        let cov = lib(evolve_covariance(&sim.evolver, &sim.state, t))?;
        let r = lib(log_negativity(&cov))?;
        *out = TmEntanglement {
            e_raw: r.e_raw,
            e: r.e,
            script_a: r.script_a,
            script_b: r.script_b,
            det_v: r.det_v,
            separable: r.separable,
        };
        Ok(())
    })
}

/// Sample the time series on `0, dt, …, t_max`.
///
/// # Safety
/// `sim` must be a live simulator handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tm_simulator_time_series(
    sim: *const TmSimulator,
    t_max: f64,
    dt: f64,
    out: *mut *mut TmSeries,
) -> TmStatus {
    guard(|| {
        let out = deref_mut(out, "out")?;
        *out = ptr::null_mut();
        let sim = deref(sim, "sim")?;
        let series = lib(entanglement_time_series_with(
            &sim.evolver,
            &sim.state,
            t_max,
            dt,
        ))?;
        *out = Box::into_raw(Box::new(TmSeries { series }));
        Ok(())
    })
}

/// Critical common occupation n₁ = n₂ = n above which no entanglement forms
/// within `t_max`. Coherent amplitudes of the current initial state are kept.
///
/// # Safety
/// `sim` must be a live simulator handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn tm_simulator_critical_occupation(
    sim: *const TmSimulator,
    t_max: f64,
    dt: f64,
    tol: f64,
    out: *mut f64,
) -> TmStatus {
    guard(|| {
        let sim = deref(sim, "sim")?;
        let out = deref_mut(out, "out")?;
        *out = lib(critical_occupation(&sim.params, &sim.state, t_max, dt, tol))?.n_crit;
        Ok(())
    })
}

/// Number of samples; 0 for a null handle.
///
/// # Safety
/// `series` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn tm_series_len(series: *const TmSeries) -> usize {
    series.as_ref().map_or(0, |s| s.series.len())
}

/// Copy one column into `buf`, which must hold at least
/// [`tm_series_len`] doubles (`TM_STATUS_BUFFER_TOO_SMALL` otherwise).
///
/// # Safety
/// `series` must be a live series handle and `buf` must point to `len`
/// writable doubles.
#[no_mangle]
pub unsafe extern "C" fn tm_series_copy(
    series: *const TmSeries,
    column: TmColumn,
    buf: *mut f64,
    len: usize,
) -> TmStatus {
    guard(|| {
        let s = &deref(series, "series")?.series;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len < s.len() {
            return Err((
                TmStatus::BufferTooSmall,
                format!("buffer holds {len} values, series has {}", s.len()),
            ));
        }
        let out = std::slice::from_raw_parts_mut(buf, s.len());
        for (i, slot) in out.iter_mut().enumerate() {
            let q = &s.squeeze[i];
            *slot = match column {
                TmColumn::T => s.t[i],
                TmColumn::ERaw => s.e_raw[i],
                TmColumn::E => s.e[i],
                TmColumn::VarQ1 => q.var_q1,
                TmColumn::VarP1 => q.var_p1,
                TmColumn::VarQ2 => q.var_q2,
                TmColumn::VarP2 => q.var_p2,
                TmColumn::MinPrincipal1 => q.min_principal_1,
                TmColumn::MinPrincipal2 => q.min_principal_2,
                TmColumn::DetV => s.det_v[i],
            };
        }
        Ok(())
    })
}

/// # Safety
/// `series` must be null or a live series handle.
#[no_mangle]
pub unsafe extern "C" fn tm_series_free(series: *mut TmSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Copy the calling thread's last error message into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length excluding the NUL,
/// so a caller can size a buffer with a first call using `len = 0`.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn tm_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        let bytes = msg.as_bytes();
        if !buf.is_null() && len > 0 {
            let n = bytes.len().min(len - 1);
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        bytes.len()
    })
}

/// Static name of a status code, e.g. `"TM_STATUS_UNSTABLE_REGIME"`.
#[no_mangle]
pub extern "C" fn tm_status_name(status: TmStatus) -> *const c_char {
    let s: &'static [u8] = match status {
        TmStatus::Ok => b"TM_STATUS_OK\0",
        TmStatus::NullPointer => b"TM_STATUS_NULL_POINTER\0",
        TmStatus::InvalidArgument => b"TM_STATUS_INVALID_ARGUMENT\0",
        TmStatus::UnstableRegime => b"TM_STATUS_UNSTABLE_REGIME\0",
        TmStatus::DegenerateModes => b"TM_STATUS_DEGENERATE_MODES\0",
        TmStatus::NumericalError => b"TM_STATUS_NUMERICAL_ERROR\0",
        TmStatus::NoSignChange => b"TM_STATUS_NO_SIGN_CHANGE\0",
        TmStatus::BufferTooSmall => b"TM_STATUS_BUFFER_TOO_SMALL\0",
        TmStatus::Panic => b"TM_STATUS_PANIC\0",
    };
    s.as_ptr() as *const c_char
}

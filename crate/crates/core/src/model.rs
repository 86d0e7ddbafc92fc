//! Model parameters, normal modes and the Heisenberg propagator.
//!
//! Units: ħ = k_B = 1, frequencies and couplings in units of ω₁, time in
//! units of 1/ω₁.

use nalgebra::Matrix2;

use crate::error::{Error, Result};
use crate::numerics::linalg::{CMatrix4, RMatrix4, C64, ZERO};
use crate::numerics::{drift_matrix, eig4, matrix_exponential, DriftMatrix};

/// Floor on Δ² and Ω₂² below which a parameter set is not treated as stable.
pub const EPS_STAB: f64 = 1e-12;

/// Below this modulus the diagonal coefficient `A_k^k` is not used to fix the
/// phase of mode `k`.
const PHASE_PIVOT_FLOOR: f64 = 1e-8;

pub type CMatrix2 = Matrix2<C64>;

/// Hamiltonian constants (ω₁, ω₂, g₁, g₂).
///
/// Couplings are restricted to g ≥ 0; a sign flip of either coupling is a
/// local phase redefinition of one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega1: f64,
    omega2: f64,
    g1: f64,
    g2: f64,
}

pub fn validate_params(omega1: f64, omega2: f64, g1: f64, g2: f64) -> Result<ModelParams> {
    for (name, v) in [
        ("omega1", omega1),
        ("omega2", omega2),
        ("g1", g1),
        ("g2", g2),
    ] {
        if !v.is_finite() {
            return Err(Error::NonFiniteInput { name });
        }
    }
    for (name, value) in [("omega1", omega1), ("omega2", omega2)] {
        if value <= 0.0 {
            return Err(Error::NonPositiveFrequency { name, value });
        }
    }
    for (name, value) in [("g1", g1), ("g2", g2)] {
        if value < 0.0 {
            return Err(Error::NegativeCoupling { name, value });
        }
    }
    Ok(ModelParams {
        omega1,
        omega2,
        g1,
        g2,
    })
}

impl ModelParams {
    pub fn new(omega1: f64, omega2: f64, g1: f64, g2: f64) -> Result<Self> {
        validate_params(omega1, omega2, g1, g2)
    }

    pub fn omega1(&self) -> f64 {
        self.omega1
    }

    pub fn omega2(&self) -> f64 {
        self.omega2
    }

    pub fn g1(&self) -> f64 {
        self.g1
    }

    pub fn g2(&self) -> f64 {
        self.g2
    }

    pub fn with_omega2(&self, omega2: f64) -> Result<Self> {
        validate_params(self.omega1, omega2, self.g1, self.g2)
    }

    pub fn with_couplings(&self, g1: f64, g2: f64) -> Result<Self> {
        validate_params(self.omega1, self.omega2, g1, g2)
    }

    /// Δ² = η₋² + 4η₊(g₁² − g₂²) + 8ω₁ω₂(g₁² + g₂²), η± = ω₁² ± ω₂².
    pub fn discriminant_sq(&self) -> f64 {
        let (w1, w2) = (self.omega1, self.omega2);
        let (g1s, g2s) = (self.g1 * self.g1, self.g2 * self.g2);
        let eta_p = w1 * w1 + w2 * w2;
        let eta_m = w1 * w1 - w2 * w2;
        eta_m * eta_m + 4.0 * eta_p * (g1s - g2s) + 8.0 * w1 * w2 * (g1s + g2s)
    }

    /// The two roots Ω₁², Ω₂² of the eigenmode equation. Only meaningful
    /// when Δ² ≥ 0.
    fn omega_sq(&self, delta: f64) -> [f64; 2] {
        let eta_p = self.omega1 * self.omega1 + self.omega2 * self.omega2;
        let base = eta_p + 2.0 * (self.g1 * self.g1 - self.g2 * self.g2);
        [(base + delta) / 2.0, (base - delta) / 2.0]
    }

    fn unstable(&self, quantity: &'static str, value: f64) -> Error {
        Error::UnstableRegime {
            quantity,
            value,
            omega1: self.omega1,
            omega2: self.omega2,
            g1: self.g1,
            g2: self.g2,
        }
    }

    fn degenerate(&self, delta_sq: f64) -> Error {
        Error::DegenerateModes {
            delta_sq,
            omega1: self.omega1,
            omega2: self.omega2,
            g1: self.g1,
            g2: self.g2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StabilityClass {
    Stable {
        delta_sq: f64,
        omega2_sq: f64,
    },
    Degenerate {
        delta_sq: f64,
    },
    /// `detail` is Δ² when it is negative, otherwise Ω₂².
    Unstable {
        detail: f64,
    },
}

impl StabilityClass {
    pub fn is_stable(&self) -> bool {
        matches!(self, StabilityClass::Stable { .. })
    }
}

pub fn stability_class(params: &ModelParams) -> StabilityClass {
    let delta_sq = params.discriminant_sq();
    if delta_sq < -EPS_STAB {
        return StabilityClass::Unstable { detail: delta_sq };
    }
    if delta_sq <= EPS_STAB {
        return StabilityClass::Degenerate { delta_sq };
    }
    let omega2_sq = params.omega_sq(delta_sq.sqrt())[1];
    if omega2_sq <= EPS_STAB {
        return StabilityClass::Unstable { detail: omega2_sq };
    }
    StabilityClass::Stable {
        delta_sq,
        omega2_sq,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenfrequencies {
    /// Ω₁ ≥ Ω₂ > 0.
    pub omega: [f64; 2],
    pub delta: f64,
}

/// Normal-mode frequencies from the closed-form roots.
pub fn eigenfrequencies(params: &ModelParams) -> Result<Eigenfrequencies> {
    match stability_class(params) {
        StabilityClass::Stable { delta_sq, .. } => {
            let delta = delta_sq.sqrt();
            let [s1, s2] = params.omega_sq(delta);
            Ok(Eigenfrequencies {
                omega: [s1.sqrt(), s2.sqrt()],
                delta,
            })
        }
        StabilityClass::Degenerate { delta_sq } => Err(params.degenerate(delta_sq)),
        StabilityClass::Unstable { detail } if params.discriminant_sq() < -EPS_STAB => {
            Err(params.unstable("Delta^2", detail))
        }
        StabilityClass::Unstable { detail } => Err(params.unstable("Omega2^2", detail)),
    }
}

/// Bogoliubov normal modes `â_k = Σ_m (A_m^k ĉ_m + B_m^k ĉ_m†)`.
///
/// `a[(k, m)]` holds `A_m^k` and `b[(k, m)]` holds `B_m^k` (row = mode).
/// Each mode has unit symplectic norm `Σ_m |A_m^k|² − |B_m^k|² = 1`.
/// `energy_sign[k]` is +1 when `â_k` evolves as `e^{−iΩ_k t}` and −1 when the
/// positive-norm mode carries negative energy (possible for g₁² > ω₁ω₂), in
/// which case it evolves as `e^{+iΩ_k t}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModes {
    pub omega: [f64; 2],
    pub delta: f64,
    pub energy_sign: [f64; 2],
    pub a: CMatrix2,
    pub b: CMatrix2,
}

impl NormalModes {
    /// Signed mode frequencies σ_k Ω_k.
    pub fn signed_omega(&self) -> [f64; 2] {
        [
            self.energy_sign[0] * self.omega[0],
            self.energy_sign[1] * self.omega[1],
        ]
    }

    /// The 4×4 map `(â, â†) = T (ĉ, ĉ†)`.
    pub fn transformation(&self) -> CMatrix4 {
        let mut t = CMatrix4::zeros();
        for k in 0..2 {
            for m in 0..2 {
                t[(k, m)] = self.a[(k, m)];
                t[(k, m + 2)] = self.b[(k, m)];
                t[(k + 2, m)] = self.b[(k, m)].conj();
                t[(k + 2, m + 2)] = self.a[(k, m)].conj();
            }
        }
        t
    }
}

/// Normal modes from the left eigenvectors of the drift matrix.
///
/// `â_k` obeys `dâ_k/dt = −iσ_kΩ_k â_k`, so its coefficient row `w_k` solves
/// `w_k K = −iσ_kΩ_k w_k`. Of each ±iΩ_k pair the eigenvector with positive
/// symplectic norm is the annihilator. Phase: `A_k^k` real and positive, or
/// the largest-modulus `A_m^k` when `A_k^k` vanishes (decoupled ω₁ < ω₂).
pub fn bogoliubov_coefficients(params: &ModelParams) -> Result<NormalModes> {
    let freqs = eigenfrequencies(params)?;
    let k = drift_matrix(params);
    let eig = eig4(&k.matrix().transpose()).map_err(|e| match e {
        Error::NearDefective { .. } => params.degenerate(params.discriminant_sq()),
        e => e,
    })?;

    let mut a = CMatrix2::zeros();
    let mut b = CMatrix2::zeros();
    let mut energy_sign = [0.0; 2];
    let mut taken = [false; 4];
    for mode in 0..2 {
        let omega = freqs.omega[mode];
        // the two eigenvalues closest to ±iΩ
        let mut candidates: Vec<usize> = (0..4).filter(|&j| !taken[j]).collect();
        candidates.sort_by(|&x, &y| {
            let dx = (eig.values[x].im.abs() - omega).abs();
            let dy = (eig.values[y].im.abs() - omega).abs();
            dx.total_cmp(&dy)
        });
        let pair = [candidates[0], candidates[1]];
        let norms = pair.map(|j| {
            let v = eig.vectors.column(j);
            v[0].norm_sqr() + v[1].norm_sqr() - v[2].norm_sqr() - v[3].norm_sqr()
        });
        let (chosen, norm) = if norms[0] >= norms[1] {
            (pair[0], norms[0])
        } else {
            (pair[1], norms[1])
        };
        if !(norm > 0.0) {
            return Err(params.degenerate(params.discriminant_sq()));
        }
        taken[pair[0]] = true;
        taken[pair[1]] = true;

        // eigenvalue −iσΩ  ⇒  σ = −sign(Im λ)
        energy_sign[mode] = if eig.values[chosen].im <= 0.0 {
            1.0
        } else {
            -1.0
        };

        let v = eig.vectors.column(chosen);
        let pivot = if v[mode].norm() >= PHASE_PIVOT_FLOOR {
            mode
        } else if v[0].norm() >= v[1].norm() {
            0
        } else {
            1
        };
        let phase = v[pivot].conj() / v[pivot].norm();
        let scale = phase / norm.sqrt();
        for m in 0..2 {
            a[(mode, m)] = v[m] * scale;
            b[(mode, m)] = v[m + 2] * scale;
        }
        a[(mode, pivot)] = C64::new(a[(mode, pivot)].re, 0.0);
    }
    Ok(NormalModes {
        omega: freqs.omega,
        delta: freqs.delta,
        energy_sign,
        a,
        b,
    })
}

/// Heisenberg coefficients `ĉ_m(t) = Σ_n α_mn(t) ĉ_n + β_mn(t) ĉ_n†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagatorCoeffs {
    pub t: f64,
    pub alpha: CMatrix2,
    pub beta: CMatrix2,
}

impl PropagatorCoeffs {
    pub fn identity() -> Self {
        PropagatorCoeffs {
            t: 0.0,
            alpha: CMatrix2::identity(),
            beta: CMatrix2::zeros(),
        }
    }

    /// Full map on (ĉ, ĉ†): `[[α, β], [β*, α*]]`.
    pub fn to_matrix(&self) -> CMatrix4 {
        let mut m = CMatrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = self.alpha[(i, j)];
                m[(i, j + 2)] = self.beta[(i, j)];
                m[(i + 2, j)] = self.beta[(i, j)].conj();
                m[(i + 2, j + 2)] = self.alpha[(i, j)].conj();
            }
        }
        m
    }

    /// Reads α, β from the upper half of a (c, c†) map.
    pub fn from_matrix(t: f64, m: &CMatrix4) -> Self {
        let mut alpha = CMatrix2::zeros();
        let mut beta = CMatrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                alpha[(i, j)] = m[(i, j)];
                beta[(i, j)] = m[(i, j + 2)];
            }
        }
        PropagatorCoeffs { t, alpha, beta }
    }

    /// Coefficients at `self.t + other.t`.
    pub fn compose(&self, other: &PropagatorCoeffs) -> PropagatorCoeffs {
        Self::from_matrix(self.t + other.t, &(self.to_matrix() * other.to_matrix()))
    }

    /// `Σ_n |α_mn|² − |β_mn|²` for m = 1, 2; both equal 1.
    pub fn sum_rule(&self) -> [f64; 2] {
        [0, 1].map(|m| {
            (0..2)
                .map(|n| self.alpha[(m, n)].norm_sqr() - self.beta[(m, n)].norm_sqr())
                .sum()
        })
    }
}

pub fn propagator(modes: &NormalModes, t: f64) -> Result<PropagatorCoeffs> {
    if !t.is_finite() {
        return Err(Error::NonFiniteTime(t));
    }
    if t == 0.0 {
        return Ok(PropagatorCoeffs::identity());
    }
    let phases = modes.signed_omega().map(|w| C64::new(0.0, -w * t).exp());
    let (a, b) = (&modes.a, &modes.b);
    let mut alpha = CMatrix2::zeros();
    let mut beta = CMatrix2::zeros();
    for m in 0..2 {
        for n in 0..2 {
            let mut al = ZERO;
            let mut be = ZERO;
            for k in 0..2 {
                let e = phases[k];
                al += a[(k, m)].conj() * a[(k, n)] * e - b[(k, m)] * b[(k, n)].conj() * e.conj();
                be += a[(k, m)].conj() * b[(k, n)] * e - b[(k, m)] * a[(k, n)].conj() * e.conj();
            }
            alpha[(m, n)] = al;
            beta[(m, n)] = be;
        }
    }
    Ok(PropagatorCoeffs { t, alpha, beta })
}

/// Propagator from `exp(K t)`, halving the step (and squaring back) until
/// each exponential is within range. Well defined in every regime.
pub fn oracle_propagator(drift: &DriftMatrix, t: f64) -> Result<PropagatorCoeffs> {
    if !t.is_finite() {
        return Err(Error::NonFiniteTime(t));
    }
    let mut halvings = 0;
    let mut step = t;
    let m = loop {
        match matrix_exponential(drift.matrix(), step) {
            Ok(m) => break m,
            Err(Error::NormOverflow { .. }) if halvings < 60 => {
                step *= 0.5;
                halvings += 1;
            }
            Err(e) => return Err(e),
        }
    };
    let mut m = m;
    for _ in 0..halvings {
        m = m * m;
    }
    Ok(PropagatorCoeffs::from_matrix(t, &m))
}

/// Real map on ζ = (q₁, p₁, q₂, p₂) induced by the propagator, with
/// `ĉ = (q̂ + ip̂)/√2`:
/// block (m, n) is `[[Re(α+β), −Im(α−β)], [Im(α+β), Re(α−β)]]`.
pub fn symplectic_matrix(coeffs: &PropagatorCoeffs) -> RMatrix4 {
    let mut s = RMatrix4::zeros();
    for m in 0..2 {
        for n in 0..2 {
            let al = coeffs.alpha[(m, n)];
            let be = coeffs.beta[(m, n)];
            let plus = al + be;
            let minus = al - be;
            s[(2 * m, 2 * n)] = plus.re;
            s[(2 * m, 2 * n + 1)] = -minus.im;
            s[(2 * m + 1, 2 * n)] = plus.im;
            s[(2 * m + 1, 2 * n + 1)] = minus.re;
        }
    }
    s
}

/// Source of propagator coefficients for one parameter set: the normal-mode
/// expansion when the modes are well separated, otherwise (on request) the
/// matrix-exponential route.
#[derive(Debug, Clone)]
pub enum Evolver {
    Analytic(NormalModes),
    Oracle(DriftMatrix),
}

impl Evolver {
    /// Analytic evolver; fails outside the stable class.
    pub fn new(params: &ModelParams) -> Result<Self> {
        Ok(Evolver::Analytic(bogoliubov_coefficients(params)?))
    }

    /// As [`Evolver::new`], but routes degenerate parameter sets to the
    /// matrix-exponential propagator instead of failing.
    pub fn with_degenerate_fallback(params: &ModelParams) -> Result<Self> {
        match bogoliubov_coefficients(params) {
            Ok(modes) => Ok(Evolver::Analytic(modes)),
            Err(Error::DegenerateModes { .. }) => Ok(Evolver::Oracle(drift_matrix(params))),
            Err(e) => Err(e),
        }
    }

    pub fn oracle(params: &ModelParams) -> Self {
        Evolver::Oracle(drift_matrix(params))
    }

    pub fn at(&self, t: f64) -> Result<PropagatorCoeffs> {
        match self {
            Evolver::Analytic(modes) => propagator(modes, t),
            Evolver::Oracle(drift) => oracle_propagator(drift, t),
        }
    }
}

//! Displaced thermal initial states and their Gaussian evolution.
//!
//! Quadratures follow `c = (q + ip)/√2`, so the vacuum has variance 1/2 and
//! a thermal mode with occupation ⟨n⟩ has variance `N = ⟨n⟩ + 1/2`.

use std::f64::consts::{PI, SQRT_2};

use nalgebra::{Cholesky, SymmetricEigen};

use crate::error::{Error, Result};
use crate::model::PropagatorCoeffs;
use crate::numerics::linalg::{
    inverse_with_condition, max_abs_r, symplectic_form, CMatrix4, RMatrix4, RVector4, C64,
};

/// Condition number of V⁻¹ above which the Wigner route gives up.
pub const MAX_INVERSE_CONDITION: f64 = 1e12;

/// Mean boson number of a thermal mode, `1/(e^{ω/T} − 1)`, and 0 at T = 0.
pub fn thermal_occupation(omega: f64, temperature: f64) -> Result<f64> {
    if !omega.is_finite() || !temperature.is_finite() {
        return Err(Error::NonFiniteInput {
            name: "thermal_occupation",
        });
    }
    if omega <= 0.0 {
        return Err(Error::NonPositiveFrequency {
            name: "omega",
            value: omega,
        });
    }
    if temperature < 0.0 {
        return Err(Error::NegativeTemperature(temperature));
    }
    if temperature == 0.0 {
        return Ok(0.0);
    }
    Ok(1.0 / (omega / temperature).exp_m1())
}

/// Product of two displaced thermal states: coherent amplitudes α₁, α₂ and
/// thermal occupations ⟨n₁⟩, ⟨n₂⟩.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialState {
    alpha: [C64; 2],
    occupation: [f64; 2],
}

impl InitialState {
    pub fn new(alpha1: C64, alpha2: C64, n1: f64, n2: f64) -> Result<Self> {
        for (name, v) in [
            ("alpha1", alpha1.re),
            ("alpha1", alpha1.im),
            ("alpha2", alpha2.re),
            ("alpha2", alpha2.im),
            ("n1", n1),
            ("n2", n2),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFiniteInput { name });
            }
        }
        for (name, value) in [("n1", n1), ("n2", n2)] {
            if value < 0.0 {
                return Err(Error::NegativeOccupation { name, value });
            }
        }
        Ok(InitialState {
            alpha: [alpha1, alpha2],
            occupation: [n1, n2],
        })
    }

    pub fn vacuum() -> Self {
        InitialState {
            alpha: [C64::new(0.0, 0.0); 2],
            occupation: [0.0; 2],
        }
    }

    /// Undisplaced thermal product state.
    pub fn thermal(n1: f64, n2: f64) -> Result<Self> {
        Self::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0), n1, n2)
    }

    pub fn alpha(&self) -> [C64; 2] {
        self.alpha
    }

    pub fn occupation(&self) -> [f64; 2] {
        self.occupation
    }

    /// Wigner widths `N_i = ⟨n_i⟩ + 1/2`.
    pub fn widths(&self) -> [f64; 2] {
        self.occupation.map(|n| n + 0.5)
    }

    pub fn with_occupation(&self, n1: f64, n2: f64) -> Result<Self> {
        Self::new(self.alpha[0], self.alpha[1], n1, n2)
    }
}

/// Coefficients of the evolved Wigner function
/// `W = exp(−F₁ − F₂)/(π² N₁N₂)` with
///
/// `F₁ = A₁|c₁|² + A₂|c₂|² − (B₁*c₁² + B₂*c₂² + B₃*c₁c₂ − B₄*c₁c₂* + c.c.)`
/// `F₂ = Σ_i |α_i|²/N_i − (D_i*c_i + c.c.)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerCoeffs {
    pub a: [f64; 2],
    /// B₁ … B₄.
    pub b: [C64; 4],
    pub d: [C64; 2],
    pub widths: [f64; 2],
    /// Σ_i |α_i|²/N_i, the constant part of F₂.
    pub amplitude_term: f64,
}

impl WignerCoeffs {
    /// Normalisation 𝒩 = N₁N₂.
    pub fn normalization(&self) -> f64 {
        self.widths[0] * self.widths[1]
    }

    pub fn quadratic_form(&self, c: [C64; 2]) -> f64 {
        let [c1, c2] = c;
        let [b1, b2, b3, b4] = self.b;
        let cross = b1.conj() * c1 * c1 + b2.conj() * c2 * c2 + b3.conj() * c1 * c2
            - b4.conj() * c1 * c2.conj();
        self.a[0] * c1.norm_sqr() + self.a[1] * c2.norm_sqr() - 2.0 * cross.re
    }

    pub fn linear_form(&self, c: [C64; 2]) -> f64 {
        let lin = self.d[0].conj() * c[0] + self.d[1].conj() * c[1];
        self.amplitude_term - 2.0 * lin.re
    }

    /// The matrix `V⁻¹` with `F₁ = ½ ζᵀ V⁻¹ ζ`.
    pub fn inverse_variance(&self) -> RMatrix4 {
        let [b1, b2, b3, b4] = self.b;
        let x = |a: f64, b: C64| [[a - 2.0 * b.re, -2.0 * b.im], [-2.0 * b.im, a + 2.0 * b.re]];
        let x1 = x(self.a[0], b1);
        let x2 = x(self.a[1], b2);
        let y = [[(b4 - b3).re, -(b4 + b3).im], [-(b3 - b4).im, (b4 + b3).re]];
        let mut m = RMatrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = x1[i][j];
                m[(i + 2, j + 2)] = x2[i][j];
                m[(i, j + 2)] = y[i][j];
                m[(j + 2, i)] = y[i][j];
            }
        }
        m
    }
}

/// Real symmetric covariance matrix over ζ = (q₁, p₁, q₂, p₂) and the
/// quadrature means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceState {
    pub v: RMatrix4,
    pub mean: RVector4,
}

impl CovarianceState {
    /// Smallest eigenvalue of the Hermitian matrix `V + iJ/2`; non-negative
    /// for physical states.
    pub fn uncertainty_floor(&self) -> f64 {
        let j = symplectic_form();
        let h = CMatrix4::from_fn(|r, c| C64::new(self.v[(r, c)], 0.5 * j[(r, c)]));
        SymmetricEigen::new(h).eigenvalues.min()
    }

    pub fn symmetry_residual(&self) -> f64 {
        max_abs_r(&(self.v - self.v.transpose()))
    }

    /// Checks symmetry, the uncertainty relation and the purity bound.
    pub fn is_physical(&self) -> bool {
        self.symmetry_residual() <= 1e-12
            && self.uncertainty_floor() >= -1e-10
            && self.v.determinant() >= 1.0 / 16.0 - 1e-10
    }
}

fn symmetrize(m: &RMatrix4) -> RMatrix4 {
    (m + m.transpose()) * 0.5
}

pub fn initial_covariance(state: &InitialState) -> CovarianceState {
    let [n1, n2] = state.widths();
    let [a1, a2] = state.alpha;
    CovarianceState {
        v: RMatrix4::from_diagonal(&RVector4::new(n1, n1, n2, n2)),
        mean: RVector4::new(a1.re, a1.im, a2.re, a2.im) * SQRT_2,
    }
}

pub fn wigner_coefficients(coeffs: &PropagatorCoeffs, state: &InitialState) -> WignerCoeffs {
    let al = &coeffs.alpha;
    let be = &coeffs.beta;
    let [n1, n2] = state.widths();
    let [x1, x2] = state.alpha;
    let inv = [1.0 / n1, 1.0 / n2];

    // Each sum runs over the initial mode j, weighted by 1/N_j.
    let a = [0, 1].map(|m| {
        (0..2)
            .map(|j| (al[(m, j)].norm_sqr() + be[(m, j)].norm_sqr()) * inv[j])
            .sum()
    });
    let b1: C64 = (0..2).map(|j| al[(0, j)] * be[(0, j)] * inv[j]).sum();
    let b2: C64 = (0..2).map(|j| al[(1, j)] * be[(1, j)] * inv[j]).sum();
    let b3: C64 = (0..2)
        .map(|j| (al[(0, j)] * be[(1, j)] + al[(1, j)] * be[(0, j)]) * inv[j])
        .sum();
    let b4: C64 = (0..2)
        .map(|j| (al[(0, j)] * al[(1, j)].conj() + be[(0, j)] * be[(1, j)].conj()) * inv[j])
        .sum();
    let amp = [x1, x2];
    let d = [0, 1].map(|m| {
        (0..2)
            .map(|j| (al[(m, j)] * amp[j] - be[(m, j)] * amp[j].conj()) * inv[j])
            .sum()
    });
    WignerCoeffs {
        a,
        b: [b1, b2, b3, b4],
        d,
        widths: [n1, n2],
        amplitude_term: x1.norm_sqr() * inv[0] + x2.norm_sqr() * inv[1],
    }
}

/// Covariance by inverting the Wigner quadratic form; the mean is the
/// stationary point of `F₁ + F₂`.
pub fn covariance_from_wigner(w: &WignerCoeffs) -> Result<CovarianceState> {
    let m = w.inverse_variance();
    let (inv, condition) = inverse_with_condition(&m).ok_or(Error::SingularInverseVariance {
        condition: f64::INFINITY,
    })?;
    if !(condition <= MAX_INVERSE_CONDITION) || Cholesky::new(m).is_none() {
        return Err(Error::SingularInverseVariance { condition });
    }
    let v = symmetrize(&inv);
    // F₁ + F₂ = ½ζᵀV⁻¹ζ − lᵀζ + const with l = √2 (Re D₁, Im D₁, Re D₂, Im D₂)
    let l = RVector4::new(w.d[0].re, w.d[0].im, w.d[1].re, w.d[1].im) * SQRT_2;
    Ok(CovarianceState { v, mean: v * l })
}

/// `V(t) = S V₀ Sᵀ`, `mean(t) = S mean₀`.
pub fn covariance_by_propagation(s: &RMatrix4, v0: &CovarianceState) -> Result<CovarianceState> {
    let j = symplectic_form();
    let residual = max_abs_r(&(s * j * s.transpose() - j));
    let scale = max_abs_r(s).powi(2).max(1.0);
    if !(residual <= 1e-10 * scale) {
        return Err(Error::NonSymplecticInput { residual });
    }
    Ok(CovarianceState {
        v: symmetrize(&(s * v0.v * s.transpose())),
        mean: s * v0.mean,
    })
}

/// Quadrature means from `⟨ĉ_m(t)⟩ = Σ_n α_mn α_n + β_mn α_n*`.
pub fn mean_vector(coeffs: &PropagatorCoeffs, state: &InitialState) -> RVector4 {
    let amp = state.alpha;
    let c = [0, 1].map(|m| -> C64 {
        (0..2)
            .map(|n| coeffs.alpha[(m, n)] * amp[n] + coeffs.beta[(m, n)] * amp[n].conj())
            .sum()
    });
    RVector4::new(c[0].re, c[0].im, c[1].re, c[1].im) * SQRT_2
}

/// Evolved Wigner density at the phase-space point (c₁, c₂).
pub fn wigner_density(w: &WignerCoeffs, c: [C64; 2]) -> f64 {
    (-(w.quadratic_form(c) + w.linear_form(c))).exp() / (PI * PI * w.normalization())
}

/// Initial product density `Π_i exp(−|c_i − α_i|²/N_i)/(πN_i)`.
pub fn initial_wigner_density(state: &InitialState, c: [C64; 2]) -> f64 {
    let widths = state.widths();
    (0..2)
        .map(|i| (-(c[i] - state.alpha[i]).norm_sqr() / widths[i]).exp() / (PI * widths[i]))
        .product()
}

/// Phase-space argument mapped back to t = 0:
/// `ν_m = Σ_n α_nm* c_n − β_nm c_n*`, so that `W(c; t) = W(ν; 0)`.
pub fn back_propagate(coeffs: &PropagatorCoeffs, c: [C64; 2]) -> [C64; 2] {
    [0, 1].map(|m| {
        (0..2)
            .map(|n| coeffs.alpha[(n, m)].conj() * c[n] - coeffs.beta[(n, m)] * c[n].conj())
            .sum()
    })
}

//! Logarithmic negativity and single-mode squeezing diagnostics.

use nalgebra::{Matrix2, SymmetricEigen};

use crate::error::{Error, Result};
use crate::gaussian::CovarianceState;
use crate::numerics::linalg::{symplectic_form, RMatrix4};

/// Squeezing is declared below `1/2 − SQUEEZE_EPS`.
pub const SQUEEZE_EPS: f64 = 1e-9;
/// `ℬ² − det V` in `[−DISCRIMINANT_CLAMP, 0)` is roundoff, below it an error.
pub const DISCRIMINANT_CLAMP: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    /// `−½ log₂(4𝒜)`, negative for separable states.
    pub e_raw: f64,
    /// `max(e_raw, 0)`.
    pub e: f64,
    /// 𝒜: squared smallest symplectic eigenvalue of the partial transpose.
    pub script_a: f64,
    /// ℬ = (det X̃₁ + det X̃₂)/2 − det Ỹ.
    pub script_b: f64,
    pub det_v: f64,
    pub separable: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticInvariants {
    pub det_v: f64,
    pub det_x1: f64,
    pub det_x2: f64,
    pub det_y: f64,
}

fn block(v: &RMatrix4, r: usize, c: usize) -> Matrix2<f64> {
    Matrix2::new(v[(r, c)], v[(r, c + 1)], v[(r + 1, c)], v[(r + 1, c + 1)])
}

pub fn symplectic_invariants(cov: &CovarianceState) -> SymplecticInvariants {
    let v = &cov.v;
    SymplecticInvariants {
        det_v: v.determinant(),
        det_x1: block(v, 0, 0).determinant(),
        det_x2: block(v, 2, 2).determinant(),
        det_y: block(v, 0, 2).determinant(),
    }
}

/// ν₋², the smaller squared symplectic eigenvalue of Ṽ = PVP (p₂ → −p₂),
/// as the least eigenvalue of the symmetric matrix `Ṽ^{½} Jᵀ Ṽ J Ṽ^{½}`.
///
/// The closed form `ℬ − √(ℬ² − det V)` is equivalent but loses half the
/// significant digits when the two symplectic eigenvalues coincide (any pure
/// product state), turning 1e-16 roundoff into ~1e-8 spurious negativity.
fn partial_transpose_nu_sq(v: &RMatrix4) -> f64 {
    let mut vt = *v;
    for i in 0..4 {
        vt[(3, i)] = -vt[(3, i)];
        vt[(i, 3)] = -vt[(i, 3)];
    }
    let eig = SymmetricEigen::new(vt);
    let sqrt_vals = eig.eigenvalues.map(|x| x.max(0.0).sqrt());
    let root =
        eig.eigenvectors * RMatrix4::from_diagonal(&sqrt_vals) * eig.eigenvectors.transpose();
    let j = symplectic_form();
    let m = root * j.transpose() * vt * j * root;
    let m = (m + m.transpose()) * 0.5;
    SymmetricEigen::new(m).eigenvalues.min()
}

pub fn log_negativity(cov: &CovarianceState) -> Result<EntanglementReport> {
    let inv = symplectic_invariants(cov);
    let script_b = 0.5 * (inv.det_x1 + inv.det_x2) - inv.det_y;
    let disc = script_b * script_b - inv.det_v;
    if disc < -DISCRIMINANT_CLAMP {
        return Err(Error::NegativeDiscriminant { value: disc });
    }
    let script_a = partial_transpose_nu_sq(&cov.v);
    if !(script_a > 0.0) {
        return Err(Error::NegativeDiscriminant { value: disc });
    }
    let x = 4.0 * script_a;
    // exact zero for states on the boundary up to a few ulps
    let e_raw = if (x - 1.0).abs() <= 64.0 * f64::EPSILON {
        0.0
    } else {
        -0.5 * x.log2()
    };
    Ok(EntanglementReport {
        e_raw,
        e: e_raw.max(0.0),
        script_a,
        script_b,
        det_v: inv.det_v,
        separable: e_raw <= 0.0,
    })
}

pub fn is_separable(report: &EntanglementReport) -> bool {
    report.e_raw <= 0.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezingReport {
    pub var_q1: f64,
    pub var_p1: f64,
    pub var_q2: f64,
    pub var_p2: f64,
    /// Smallest eigenvalue of each single-mode 2×2 block.
    pub min_principal_1: f64,
    pub min_principal_2: f64,
    pub squeezed_1: bool,
    pub squeezed_2: bool,
}

fn min_principal(a: f64, b: f64, d: f64) -> f64 {
    let half = 0.5 * (a - d);
    let lam = 0.5 * (a + d) - half.hypot(b);
    lam.min(a).min(d)
}

pub fn quadrature_variances(cov: &CovarianceState) -> SqueezingReport {
    let v = &cov.v;
    let m1 = min_principal(v[(0, 0)], v[(0, 1)], v[(1, 1)]);
    let m2 = min_principal(v[(2, 2)], v[(2, 3)], v[(3, 3)]);
    let threshold = 0.5 - SQUEEZE_EPS;
    SqueezingReport {
        var_q1: v[(0, 0)],
        var_p1: v[(1, 1)],
        var_q2: v[(2, 2)],
        var_p2: v[(3, 3)],
        min_principal_1: m1,
        min_principal_2: m2,
        squeezed_1: m1 < threshold,
        squeezed_2: m2 < threshold,
    }
}

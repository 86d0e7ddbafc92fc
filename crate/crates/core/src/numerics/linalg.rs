use nalgebra::{Matrix4, Vector4};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix4 = Matrix4<C64>;
pub type RMatrix4 = Matrix4<f64>;
pub type RVector4 = Vector4<f64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Two-mode symplectic form over (q₁, p₁, q₂, p₂).
pub fn symplectic_form() -> RMatrix4 {
    #[rustfmt::skip]
    let j = RMatrix4::new(
        0.0, 1.0, 0.0, 0.0,
        -1.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 1.0,
        0.0, 0.0, -1.0, 0.0,
    );
    j
}

/// Induced 1-norm (max column sum) of a complex matrix.
pub fn norm1_c(m: &CMatrix4) -> f64 {
    (0..4)
        .map(|j| (0..4).map(|i| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn norm1_r(m: &RMatrix4) -> f64 {
    (0..4)
        .map(|j| (0..4).map(|i| m[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn max_abs_r(m: &RMatrix4) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.abs()))
}

pub fn max_abs_c(m: &CMatrix4) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.norm()))
}

/// Inverse by Gauss-Jordan elimination with partial pivoting, together with
/// the 1-norm condition number `‖M‖₁‖M⁻¹‖₁`. `None` when a pivot vanishes.
pub fn inverse_with_condition(m: &RMatrix4) -> Option<(RMatrix4, f64)> {
    let mut a = *m;
    let mut inv = RMatrix4::identity();
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&i, &j| a[(i, col)].abs().total_cmp(&a[(j, col)].abs()))
            .unwrap();
        let p = a[(pivot, col)];
        if p == 0.0 || !p.is_finite() {
            return None;
        }
        if pivot != col {
            a.swap_rows(pivot, col);
            inv.swap_rows(pivot, col);
        }
        let scale = 1.0 / a[(col, col)];
        for j in 0..4 {
            a[(col, j)] *= scale;
            inv[(col, j)] *= scale;
        }
        for i in 0..4 {
            if i == col {
                continue;
            }
            let factor = a[(i, col)];
            if factor == 0.0 {
                continue;
            }
            for j in 0..4 {
                a[(i, j)] -= factor * a[(col, j)];
                inv[(i, j)] -= factor * inv[(col, j)];
            }
        }
    }
    let cond = norm1_r(m) * norm1_r(&inv);
    Some((inv, cond))
}

use super::linalg::{norm1_c, CMatrix4, C64};
use crate::error::{Error, Result};

const TAYLOR_ORDER: u32 = 18;
const SCALED_NORM: f64 = 0.5;
const MAX_NORM: f64 = 100.0;

/// `exp(M t)` by scaling and squaring a fixed order-18 Taylor polynomial.
///
/// The scaling exponent `s` is the smallest with `‖Mt‖₁ / 2ˢ ≤ 0.5`, which
/// puts the truncation error far below double precision. Inputs with
/// `‖Mt‖₁ > 100` are refused rather than squared into large roundoff.
pub fn matrix_exponential(m: &CMatrix4, t: f64) -> Result<CMatrix4> {
    if !t.is_finite() || m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFiniteInput {
            name: "matrix_exponential",
        });
    }
    let x = m * C64::new(t, 0.0);
    let norm = norm1_c(&x);
    if norm > MAX_NORM {
        return Err(Error::NormOverflow { norm });
    }
    let mut s = 0;
    while norm / 2f64.powi(s) > SCALED_NORM {
        s += 1;
    }
    let x = x * C64::new(0.5f64.powi(s), 0.0);

    let id = CMatrix4::identity();
    let mut acc = id;
    for k in (1..=TAYLOR_ORDER).rev() {
        acc = id + (x * acc) * C64::new(1.0 / k as f64, 0.0);
    }
    for _ in 0..s {
        acc = acc * acc;
    }
    Ok(acc)
}

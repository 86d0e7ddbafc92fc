use crate::error::{Error, Result};

/// An interval whose endpoint function values have strictly opposite signs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    lo: f64,
    hi: f64,
    f_lo: f64,
    f_hi: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) || !(f_lo * f_hi < 0.0) {
            return Err(Error::InvalidBracket { lo, hi, f_lo, f_hi });
        }
        Ok(RootBracket { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends.
    pub fn from_fn(lo: f64, hi: f64, mut f: impl FnMut(f64) -> f64) -> Result<Self> {
        let (f_lo, f_hi) = (f(lo), f(hi));
        Self::new(lo, hi, f_lo, f_hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn f_lo(&self) -> f64 {
        self.f_lo
    }

    pub fn f_hi(&self) -> f64 {
        self.f_hi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    /// Midpoint of the final bracket.
    pub root: f64,
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

/// Number of halvings needed to shrink `width` to at most `tol`.
fn iteration_count(width: f64, tol: f64) -> u32 {
    let n = (width / tol).log2().ceil();
    if n <= 0.0 {
        0
    } else {
        n as u32
    }
}

pub fn bisect(mut f: impl FnMut(f64) -> f64, bracket: RootBracket, tol: f64) -> Result<Root> {
    try_bisect(|x| Ok(f(x)), bracket, tol)
}

/// Plain bisection for a fallible objective. Runs exactly
/// `⌈log₂((hi − lo)/tol)⌉` iterations unless the midpoint hits an exact zero.
pub fn try_bisect(
    mut f: impl FnMut(f64) -> Result<f64>,
    bracket: RootBracket,
    tol: f64,
) -> Result<Root> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "bisection tolerance must be positive, got {tol}"
        )));
    }
    let (mut lo, mut hi) = (bracket.lo, bracket.hi);
    let lo_negative = bracket.f_lo < 0.0;
    let n = iteration_count(hi - lo, tol);
    let mut iterations = 0;
    for _ in 0..n {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        iterations += 1;
        if fm == 0.0 {
            lo = mid;
            hi = mid;
            break;
        }
        if (fm < 0.0) == lo_negative {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Root {
        root: 0.5 * (lo + hi),
        lo,
        hi,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_root() {
        let f = |x: f64| x - 1.0;
        let b = RootBracket::from_fn(0.0, 2.0, f).unwrap();
        let r = bisect(f, b, 1e-6).unwrap();
        assert!((r.root - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn sqrt_two() {
        let f = |x: f64| x * x - 2.0;
        let b = RootBracket::from_fn(1.0, 2.0, f).unwrap();
        let r = bisect(f, b, 1e-9).unwrap();
        assert!((r.root - std::f64::consts::SQRT_2).abs() <= 1e-9);
        assert!(r.hi - r.lo <= 1e-9);
        assert_eq!(r.iterations, 30);
    }

    #[test]
    fn decreasing_function() {
        let f = |x: f64| 0.5 - x;
        let b = RootBracket::from_fn(0.0, 3.0, f).unwrap();
        let r = bisect(f, b, 1e-3).unwrap();
        assert!((r.root - 0.5).abs() <= 1e-3);
    }

    #[test]
    fn same_sign_bracket_rejected() {
        let f = |x: f64| x * x + 1.0;
        assert!(matches!(
            RootBracket::from_fn(-1.0, 1.0, f),
            Err(Error::InvalidBracket { .. })
        ));
        assert!(RootBracket::new(2.0, 1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn tolerance_must_be_positive() {
        let b = RootBracket::new(0.0, 1.0, -1.0, 1.0).unwrap();
        assert!(bisect(|x| x - 0.3, b, 0.0).is_err());
    }

    #[test]
    fn errors_propagate() {
        let b = RootBracket::new(0.0, 1.0, -1.0, 1.0).unwrap();
        let r = try_bisect(|_| Err(Error::NonConvergence), b, 1e-3);
        assert!(matches!(r, Err(Error::NonConvergence)));
    }
}

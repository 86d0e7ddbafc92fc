use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    /// Parabolic-vertex estimates from the three samples around `index`.
    pub t: f64,
    pub y: f64,
}

/// Local maxima `y[i−1] < y[i] ≥ y[i+1]` on a uniform grid.
///
/// A flat top counts once, at its leftmost sample, and only if the series
/// falls after it; plateaus touching either end of the series are ignored.
pub fn find_peaks(t: &[f64], y: &[f64]) -> Result<Vec<Peak>> {
    if t.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "time and value series differ in length ({} vs {})",
            t.len(),
            y.len()
        )));
    }
    let n = y.len();
    if n < 3 {
        return Err(Error::TooFewSamples(n));
    }
    let dt = t[1] - t[0];
    let mut peaks = Vec::new();
    let mut i = 1;
    while i < n - 1 {
        if !(y[i - 1] < y[i]) {
            i += 1;
            continue;
        }
        let mut j = i;
        while j + 1 < n && y[j + 1] == y[i] {
            j += 1;
        }
        if j + 1 < n && y[j + 1] < y[i] {
            let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
            let den = y0 - 2.0 * y1 + y2;
            let (offset, height) = if den != 0.0 {
                let off = (0.5 * (y0 - y2) / den).clamp(-0.5, 0.5);
                (off, y1 - 0.25 * (y0 - y2) * off)
            } else {
                (0.0, y1)
            };
            peaks.push(Peak {
                index: i,
                t: t[i] + offset * dt,
                y: height,
            });
        }
        i = j + 1;
    }
    Ok(peaks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(t_end: f64, dt: f64) -> Vec<f64> {
        let n = (t_end / dt).round() as usize;
        (0..=n).map(|i| i as f64 * dt).collect()
    }

    #[test]
    fn sine_peaks() {
        let t = grid(4.0 * PI, 0.01);
        let y: Vec<f64> = t.iter().map(|x| x.sin()).collect();
        let p = find_peaks(&t, &y).unwrap();
        assert_eq!(p.len(), 2);
        assert!((p[0].t - PI / 2.0).abs() < 1e-4);
        assert!((p[1].t - 5.0 * PI / 2.0).abs() < 1e-4);
        for peak in &p {
            assert!((peak.y - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn monotone_and_constant_have_no_peaks() {
        let t = grid(1.0, 0.1);
        let up: Vec<f64> = t.iter().map(|x| 2.0 * x).collect();
        assert!(find_peaks(&t, &up).unwrap().is_empty());
        let flat = vec![3.0; t.len()];
        assert!(find_peaks(&t, &flat).unwrap().is_empty());
    }

    #[test]
    fn plateau_reports_leftmost() {
        let t = grid(0.6, 0.1);
        let y = [0.0, 1.0, 2.0, 2.0, 2.0, 1.0, 0.0];
        let p = find_peaks(&t, &y).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].index, 2);
    }

    #[test]
    fn rising_shelf_is_not_a_peak() {
        let t = grid(0.4, 0.1);
        let y = [0.0, 1.0, 1.0, 2.0, 3.0];
        assert!(find_peaks(&t, &y).unwrap().is_empty());
        let y = [0.0, 1.0, 2.0, 2.0, 2.0];
        assert!(find_peaks(&t, &y).unwrap().is_empty());
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(
            find_peaks(&[0.0, 1.0], &[0.0, 1.0]),
            Err(Error::TooFewSamples(2))
        ));
    }
}

//! Locale-independent CSV output with 12 significant digits.

use crate::control::{SweepResult, TimeSeries};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// C `%.{digits}g` formatting: shortest of fixed and exponent notation,
/// trailing zeros removed.
pub fn format_g(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let p = digits.max(1);
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent notation");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn num(x: f64) -> String {
    format_g(x, SIGNIFICANT_DIGITS)
}

pub const EVOLVE_HEADER: &str =
    "t,E_raw,E,varq1,varp1,varq2,varp2,min_prin1,min_prin2,detV,separable";

pub fn time_series_csv(series: &TimeSeries) -> String {
    let mut out = String::with_capacity(160 * (series.len() + 1));
    out.push_str(EVOLVE_HEADER);
    out.push('\n');
    for i in 0..series.len() {
        let s = &series.squeeze[i];
        let row = [
            series.t[i],
            series.e_raw[i],
            series.e[i],
            s.var_q1,
            s.var_p1,
            s.var_q2,
            s.var_p2,
            s.min_principal_1,
            s.min_principal_2,
            series.det_v[i],
        ];
        for x in row {
            out.push_str(&num(x));
            out.push(',');
        }
        out.push_str(if series.e_raw[i] <= 0.0 {
            "true"
        } else {
            "false"
        });
        out.push('\n');
    }
    out
}

pub fn key_value_csv(key: &str, value: f64) -> String {
    format!("{key},{}\n", num(value))
}

pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::new();
    for axis in &result.axes {
        out.push_str(axis.param.name());
        out.push(',');
    }
    out.push_str("sup_E,sup_E_raw,t_argmax,separable_everywhere,error\n");
    for p in &result.points {
        for &c in &p.coords {
            out.push_str(&num(c));
            out.push(',');
        }
        match &p.outcome {
            Ok(s) => {
                out.push_str(&format!(
                    "{},{},{},{},\n",
                    num(s.sup_e),
                    num(s.sup_e_raw),
                    num(s.argmax_t),
                    s.separable_everywhere
                ));
            }
            Err(e) => {
                out.push_str(&format!(",,,,{}\n", e.kind));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_c_printf() {
        let cases = [
            (1.0, "1"),
            (0.5, "0.5"),
            (-2.25, "-2.25"),
            (1.0 / 3.0, "0.333333333333"),
            (2.0 / 3.0, "0.666666666667"),
            (123456789012.0, "123456789012"),
            (1234567890123.0, "1.23456789012e+12"),
            (1e-4, "0.0001"),
            (1.5e-5, "1.5e-05"),
            (6.02214076e23, "6.02214076e+23"),
            (1e100, "1e+100"),
            (0.0, "0"),
            (-0.0, "0"),
            (f64::NAN, "nan"),
            (f64::NEG_INFINITY, "-inf"),
            (99.99999999999999, "100"),
        ];
        for (x, expect) in cases {
            assert_eq!(num(x), expect, "{x:e}");
        }
        assert_eq!(format_g(std::f64::consts::PI, 3), "3.14");
    }

    #[test]
    fn key_value() {
        assert_eq!(key_value_csv("n_crit", 0.6437), "n_crit,0.6437\n");
    }
}

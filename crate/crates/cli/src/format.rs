use num_complex::Complex64;

/// printf-style %.{digits}g: shortest of fixed/scientific, trailing zeros
/// dropped, −0 printed as 0.
pub fn fmt_g(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// "re±im i" with 15 significant digits, e.g. `2.5+0i`.
pub fn fmt_complex(z: Complex64) -> String {
    let re = fmt_g(z.re, 15);
    let im = fmt_g(z.im.abs(), 15);
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{re}{sign}{im}i")
}

/// 17 significant digits for CSV rows, −0 normalised to 0.
pub fn fmt_csv(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_format() {
        assert_eq!(fmt_g(2.5, 15), "2.5");
        assert_eq!(fmt_g(-0.0, 15), "0");
        assert_eq!(fmt_g(1e-7, 15), "1e-07");
        assert_eq!(fmt_g(123456.0, 15), "123456");
        assert_eq!(fmt_g(1.0 / 3.0, 15), "0.333333333333333");
        assert_eq!(fmt_g(1e20, 15), "1e+20");
    }

    #[test]
    fn complex_format() {
        assert_eq!(fmt_complex(Complex64::new(2.5, 0.0)), "2.5+0i");
        assert_eq!(fmt_complex(Complex64::new(0.0, -1.5)), "0-1.5i");
    }

    #[test]
    fn csv_zero() {
        assert_eq!(fmt_csv(-0.0), fmt_csv(0.0));
        assert_eq!(fmt_csv(0.5), "5.0000000000000000e-1");
    }
}

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special_fn::{big_theta, ModularParams, TruncationConfig};

fn theta_checked(arg: Complex64, nome: Complex64, tc: &TruncationConfig, what: &str) -> Result<Complex64> {
    let v = big_theta(arg, nome, tc)?;
    tc.pole_check(v, || format!("{what}: Theta_{{q^2N}}({arg}) vanishes"))
}

fn check_q(q: Complex64, n: usize) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::Range(format!("rank N must be at least 2, got {n}")));
    }
    let r = q.norm();
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::Domain(format!("need 0 < |q| < 1, got {r}")));
    }
    Ok(q.powi(2 * n as i32))
}

/// F(M,x), the exchange function between t(z) and L(w).
pub fn f_exchange(m: i64, x: Complex64, mp: &ModularParams, tc: &TruncationConfig) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Domain("F(M,x) needs M != 0".into()));
    }
    let n = mp.n();
    let (q, p) = (mp.q(), mp.p());
    let nome = check_q(q, n)?;
    let x2 = x * x;
    let q2 = q * q;
    let th = |a: Complex64| big_theta(a, nome, tc);
    let chk = |a: Complex64| theta_checked(a, nome, tc, "F(M,x) denominator");
    let nm = n as i64 * m.abs();
    let mut acc = q.powi((2 * m * (n as i64 - 1)) as i32);
    if m > 0 {
        for k in 0..nm {
            let pk = p.powi(k as i32);
            acc *= th(pk.inv() / x2)? * th(x2 * pk)? / (chk(q2 / (pk * x2))? * chk(x2 * q2 * pk)?);
        }
    } else {
        for k in 1..=nm {
            let pk = p.powi(k as i32);
            acc *= th(q2 * pk / x2)? * th(x2 * q2 / pk)? / (chk(pk / x2)? * chk(x2 / pk)?);
        }
    }
    Ok(acc)
}

/// Y_{N,p,q,M}(x), the t–t exchange function.
///
/// Only the theta nome q^{2N} needs |·| < 1, so p is unrestricted beyond
/// p ≠ 0 (the classical-limit points p = q^{Nh} with h < 0 lie outside the
/// unit disc). The M < 0 product with N|M| − 1 = 0 is empty and returns 1.
pub fn y_exchange(n: usize, m: i64, x: Complex64, q: Complex64, p: Complex64, tc: &TruncationConfig) -> Result<Complex64> {
    if m == 0 {
        return Err(Error::Domain("Y needs M != 0".into()));
    }
    if p.norm() == 0.0 || !p.is_finite() {
        return Err(Error::Domain("Y needs finite p != 0".into()));
    }
    let nome = check_q(q, n)?;
    let x2 = x * x;
    let q2 = q * q;
    let top = if m > 0 { n as i64 * m } else { n as i64 * m.abs() - 1 };
    let th = |a: Complex64| big_theta(a, nome, tc);
    let chk = |a: Complex64| theta_checked(a, nome, tc, "Y denominator");
    let mut acc = Complex64::new(1.0, 0.0);
    for k in 1..=top {
        let pk = p.powi(k as i32);
        let down = th(x2 / pk)?;
        let up = chk(x2 * pk)?;
        acc *= down * down * th(x2 * q2 * pk)? * th(x2 * pk / q2)?;
        acc /= up * up * chk(x2 * q2 / pk)? * chk(x2 / (pk * q2))?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn direct_theta(z: Complex64, b: Complex64) -> Complex64 {
        let poch = |x: Complex64| (0..200).fold(c(1.0, 0.0), |acc, k| acc * (1.0 - x * b.powi(k)));
        poch(z) * poch(b / z) * poch(b)
    }

    #[test]
    fn f_exchange_matches_term_by_term_oracle() {
        let tc = TruncationConfig::default();
        let (q, p) = (c(0.5, 0.0), c(0.3, 0.0));
        let mp = ModularParams::new(2, q, p).unwrap();
        let x = c(0.7, 0.6);
        let x2 = x * x;
        let b = q.powi(4);
        let mut oracle = q.powi(2);
        for k in 0..2 {
            let pk = p.powi(k);
            oracle *= direct_theta(1.0 / (x2 * pk), b) * direct_theta(x2 * pk, b)
                / (direct_theta(q * q / (x2 * pk), b) * direct_theta(x2 * q * q * pk, b));
        }
        let v = f_exchange(1, x, &mp, &tc).unwrap();
        assert!((v - oracle).norm() < 1e-11 * oracle.norm());
    }

    #[test]
    fn empty_product_for_minimal_negative_m() {
        // N|M| − 1 = 0 never happens for N ≥ 2; the smallest negative case has one factor
        let tc = TruncationConfig::default();
        let v = y_exchange(2, -1, c(0.7, 0.6), c(0.5, 0.0), c(0.3, 0.0), &tc).unwrap();
        assert!(v.is_finite());
    }

    #[test]
    fn y_rejects_zero_m() {
        let tc = TruncationConfig::default();
        assert!(y_exchange(2, 0, c(0.7, 0.6), c(0.5, 0.0), c(0.3, 0.0), &tc).is_err());
    }

    #[test]
    fn f_on_unit_circle_is_finite() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(2, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        let v = f_exchange(1, c(0.6, 0.8), &mp, &tc).unwrap();
        assert!(v.is_finite());
    }
}

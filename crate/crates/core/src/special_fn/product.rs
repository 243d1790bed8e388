use num_complex::Complex64;

use super::{ModularParams, TruncationConfig};
use crate::error::{Error, Result};

/// Terms whose remaining geometric tail is below this no longer change a
/// product in double precision.
const NEGLIGIBLE: f64 = 1e-18;

fn check_base(name: &str, base: Complex64) -> Result<f64> {
    let r = base.norm();
    if !(r < 1.0) {
        return Err(Error::Domain(format!("product base {name} needs modulus < 1, got {r}")));
    }
    Ok(r)
}

fn single(x: Complex64, base: Complex64, terms: usize, tail_bound: f64) -> Result<Complex64> {
    let rb = check_base("base", base)?;
    let mut acc = Complex64::new(1.0, 0.0);
    let mut t = x;
    for _ in 0..terms {
        if t.norm() / (1.0 - rb) < NEGLIGIBLE {
            return Ok(acc);
        }
        acc *= 1.0 - t;
        t *= base;
    }
    let tail = t.norm() / (1.0 - rb);
    if tail > tail_bound {
        return Err(Error::Truncation {
            what: format!("({x}; {base})_inf"),
            tail,
            bound: tail_bound,
        });
    }
    Ok(acc)
}

/// (x; b)_∞ = ∏_{n≥0} (1 − x bⁿ), at most `prod_terms` factors.
pub fn q_pochhammer(x: Complex64, base: Complex64, tc: &TruncationConfig) -> Result<Complex64> {
    single(x, base, tc.prod_terms, tc.tail_bound)
}

/// (x; b₁, b₂)_∞ = ∏_{m,n≥0} (1 − x b₁^m b₂^n), at most `prod_terms` factors
/// per base.
pub fn q_pochhammer2(x: Complex64, base1: Complex64, base2: Complex64, tc: &TruncationConfig) -> Result<Complex64> {
    q_pochhammer2_truncated(x, base1, base2, tc.prod_terms, tc.prod_terms, tc.tail_bound)
}

/// Double product with independent cutoffs on the two bases.
pub fn q_pochhammer2_truncated(
    x: Complex64,
    base1: Complex64,
    base2: Complex64,
    terms1: usize,
    terms2: usize,
    tail_bound: f64,
) -> Result<Complex64> {
    let r1 = check_base("base1", base1)?;
    let r2 = check_base("base2", base2)?;
    let mut acc = Complex64::new(1.0, 0.0);
    let mut row = x;
    for _ in 0..terms1 {
        if row.norm() / ((1.0 - r1) * (1.0 - r2)) < NEGLIGIBLE {
            return Ok(acc);
        }
        // the row's own truncation is judged against the global bound below
        acc *= single(row, base2, terms2, f64::INFINITY)?;
        row *= base1;
    }
    let denom = (1.0 - r1) * (1.0 - r2);
    let tail = row.norm() / denom + x.norm() * r2.powi(terms2 as i32) / denom;
    if tail > tail_bound {
        return Err(Error::Truncation {
            what: format!("({x}; {base1}, {base2})_inf"),
            tail,
            bound: tail_bound,
        });
    }
    Ok(acc)
}

/// Θ_b(z) = (z; b)_∞ (b z⁻¹; b)_∞ (b; b)_∞.
pub fn big_theta(z: Complex64, nome: Complex64, tc: &TruncationConfig) -> Result<Complex64> {
    check_base("nome", nome)?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("big_theta is singular at z = 0".into()));
    }
    Ok(q_pochhammer(z, nome, tc)? * q_pochhammer(nome / z, nome, tc)? * q_pochhammer(nome, nome, tc)?)
}

/// 1/κ(z²): four double-base products over four, bases (p, q^{2N}).
pub fn kappa_inv(z2: Complex64, mp: &ModularParams, tc: &TruncationConfig) -> Result<Complex64> {
    if z2.norm() == 0.0 {
        return Err(Error::Domain("kappa_inv needs z^2 != 0".into()));
    }
    let n = mp.n() as i32;
    let (q, p) = (mp.q(), mp.p());
    let big_q = mp.nome();
    let q2 = q * q;
    let pq = p * q.powi(2 * n - 2);
    let f = |x: Complex64| q_pochhammer2(x, p, big_q, tc);
    let num = f(big_q / z2)? * f(q2 * z2)? * f(p / z2)? * f(pq * z2)?;
    let den_factors = [
        ("(q^2N z^2; p, q^2N)", big_q * z2),
        ("(q^2 z^-2; p, q^2N)", q2 / z2),
        ("(p z^2; p, q^2N)", p * z2),
        ("(p q^{2N-2} z^-2; p, q^2N)", pq / z2),
    ];
    let mut den = Complex64::new(1.0, 0.0);
    for (name, arg) in den_factors {
        let v = f(arg)?;
        tc.pole_check(v, || format!("kappa_inv denominator factor {name} vanishes at z^2 = {z2}"))?;
        den *= v;
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn direct(x: Complex64, base: Complex64, terms: usize) -> Complex64 {
        (0..terms).fold(c(1.0, 0.0), |acc, n| acc * (1.0 - x * base.powi(n as i32)))
    }

    #[test]
    fn trivial_products() {
        let tc = TruncationConfig::default();
        assert_eq!(q_pochhammer(c(0.0, 0.0), c(0.3, 0.1), &tc).unwrap(), c(1.0, 0.0));
        assert_eq!(q_pochhammer(c(1.0, 0.0), c(0.5, 0.0), &tc).unwrap(), c(0.0, 0.0));
        assert_eq!(q_pochhammer2(c(0.0, 0.0), c(0.3, 0.0), c(0.4, 0.0), &tc).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn single_product_matches_direct_multiplication() {
        let tc = TruncationConfig::default();
        let v = q_pochhammer(c(0.3, 0.0), c(0.5, 0.0), &tc).unwrap();
        assert!((v - direct(c(0.3, 0.0), c(0.5, 0.0), 60)).norm() < 1e-14);
    }

    #[test]
    fn double_product_matches_double_loop() {
        let tc = TruncationConfig::default();
        let (x, b1, b2) = (c(0.2, 0.0), c(0.3, 0.0), c(0.4, 0.0));
        let mut oracle = c(1.0, 0.0);
        for m in 0..80 {
            for n in 0..80 {
                oracle *= 1.0 - x * b1.powi(m) * b2.powi(n);
            }
        }
        let v = q_pochhammer2(x, b1, b2, &tc).unwrap();
        assert!((v - oracle).norm() < 1e-13);
    }

    #[test]
    fn double_product_collapses_with_single_second_factor() {
        let (x, b1, b2) = (c(0.2, 0.1), c(0.3, 0.0), c(0.4, 0.0));
        let collapsed = q_pochhammer2_truncated(x, b1, b2, 64, 1, f64::INFINITY).unwrap();
        let single = q_pochhammer(x, b1, &TruncationConfig::default()).unwrap();
        assert!((collapsed - single).norm() < 1e-15);
    }

    #[test]
    fn big_theta_matches_triple_product_and_vanishes_at_one() {
        let tc = TruncationConfig::default();
        let (z, b) = (c(0.5, 0.0), c(0.3, 0.0));
        let oracle = direct(z, b, 80) * direct(b / z, b, 80) * direct(b, b, 80);
        assert!((big_theta(z, b, &tc).unwrap() - oracle).norm() < 1e-13);
        assert!(big_theta(c(1.0, 0.0), b, &tc).unwrap().norm() < 1e-15);
    }

    #[test]
    fn big_theta_functional_equation() {
        let tc = TruncationConfig::default();
        let b = c(0.3, 0.1);
        for z in [c(0.7, 0.2), c(-0.4, 0.9), c(1.3, -0.5)] {
            let lhs = big_theta(b * z, b, &tc).unwrap();
            let rhs = -big_theta(z, b, &tc).unwrap() / z;
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn domain_errors() {
        let tc = TruncationConfig::default();
        assert!(matches!(q_pochhammer(c(0.1, 0.0), c(1.0, 0.0), &tc), Err(Error::Domain(_))));
        assert!(matches!(q_pochhammer2(c(0.1, 0.0), c(0.2, 0.0), c(0.0, 1.2), &tc), Err(Error::Domain(_))));
        assert!(matches!(big_theta(c(0.0, 0.0), c(0.2, 0.0), &tc), Err(Error::Domain(_))));
    }

    #[test]
    fn short_product_fails_loudly() {
        let tc = TruncationConfig { prod_terms: 3, ..TruncationConfig::default() };
        assert!(matches!(q_pochhammer(c(0.5, 0.0), c(0.9, 0.0), &tc), Err(Error::Truncation { .. })));
    }

    #[test]
    fn kappa_inv_zero_and_generic() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(2, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        let v = kappa_inv(c(0.8, 0.3), &mp, &tc).unwrap();
        assert!(v.is_finite() && v.norm() > 0.0);
        // (q^{2N} z^{-2}; p, q^{2N}) has the factor 1 − q^{2N}/z² = 0 here
        let z2 = mp.nome();
        assert!(kappa_inv(z2, &mp, &tc).unwrap().norm() < 1e-12);
    }

    #[test]
    fn kappa_inv_pole_is_reported() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(2, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        // q^2/z^2 = 1 kills the second denominator factor
        let z2 = mp.q() * mp.q();
        assert!(matches!(kappa_inv(z2, &mp, &tc), Err(Error::Pole(_))));
    }
}

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special_fn::q_number;
use crate::structure_fn::ClassicalLimitLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TableLabel {
    CriticalK0,
    Sl2Sector { k: u32 },
    HigherSpinK0 { i: usize, j: usize },
    HLimit { h: i64, m: i64 },
}

/// C_r for r ∈ [−r_max, r_max]. Only r > 0 is computed; C_{−r} is set to
/// −C_r and C_0 to 0, so oddness holds exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeCoeffTable {
    pub label: TableLabel,
    pub n: usize,
    pub q: Complex64,
    pub coeffs: BTreeMap<i64, Complex64>,
}

impl ModeCoeffTable {
    fn build<F>(label: TableLabel, n: usize, q: Complex64, r_max: u32, mut coeff: F) -> Result<Self>
    where
        F: FnMut(i64) -> Result<Complex64>,
    {
        check_q(q)?;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, Complex64::new(0.0, 0.0));
        for r in 1..=r_max as i64 {
            let v = coeff(r)?;
            if !v.is_finite() {
                return Err(Error::Range(format!("coefficient C_{r} overflows")));
            }
            coeffs.insert(r, v);
            coeffs.insert(-r, -v);
        }
        Ok(Self { label, n, q, coeffs })
    }

    pub fn r_max(&self) -> i64 {
        self.coeffs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn get(&self, r: i64) -> Complex64 {
        self.coeffs.get(&r).copied().unwrap_or_default()
    }

    /// max_r |C_r − other.C_r| over the common window.
    pub fn max_abs_diff(&self, other: &ModeCoeffTable) -> f64 {
        self.coeffs
            .iter()
            .map(|(r, v)| (v - other.get(*r)).norm())
            .fold(0.0, f64::max)
    }

    /// max_r |C_r + C_{−r}| together with |C_0|.
    pub fn oddness_residual(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|(r, v)| (v + self.get(-r)).norm())
            .fold(self.get(0).norm(), f64::max)
    }

    /// Largest |C_r|, used to scale absolute comparisons.
    pub fn scale(&self) -> f64 {
        self.coeffs.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

fn check_q(q: Complex64) -> Result<()> {
    let r = q.norm();
    if r == 0.0 || (r - 1.0).abs() < 1e-12 {
        return Err(Error::Domain(format!("mode tables need 0 < |q| != 1, got |q| = {r}")));
    }
    Ok(())
}

fn check_rank(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Range(format!("rank N must be at least 2, got {n}")));
    }
    Ok(())
}

/// −2(q − q⁻¹) ln q
fn norm_factor(q: Complex64) -> Complex64 {
    -2.0 * (q - q.inv()) * q.ln()
}

/// −2(q − q⁻¹) ln q [(N−1)r]_q [r]_q / [Nr]_q
pub fn critical_k0_table(n: usize, q: Complex64, r_max: u32) -> Result<ModeCoeffTable> {
    higher_spin_coeffs(TableLabel::CriticalK0, n, 1, 1, q, r_max)
}

/// (−1)^{k+1} 2 ln q (q^{(2k+1)s} − q^{−(2k+1)s}) / (q^s + q^{−s}), sl(2) only.
pub fn sl2_sector_table(k: u32, q: Complex64, s_max: u32) -> Result<ModeCoeffTable> {
    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
    let a = 2 * k as i32 + 1;
    ModeCoeffTable::build(TableLabel::Sl2Sector { k }, 2, q, s_max, |s| {
        let s = s as i32;
        Ok(sign * 2.0 * q.ln() * (q.powi(a * s) - q.powi(-a * s)) / (q.powi(s) + q.powi(-s)))
    })
}

/// −2(q − q⁻¹) ln q [(N − max(i,j))r]_q [min(i,j) r]_q / [Nr]_q
pub fn higher_spin_k0_table(i: usize, j: usize, n: usize, q: Complex64, r_max: u32) -> Result<ModeCoeffTable> {
    higher_spin_coeffs(TableLabel::HigherSpinK0 { i, j }, n, i, j, q, r_max)
}

fn higher_spin_coeffs(label: TableLabel, n: usize, i: usize, j: usize, q: Complex64, r_max: u32) -> Result<ModeCoeffTable> {
    check_rank(n)?;
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::Range(format!("spins must lie in 1..={n}, got ({i}, {j})")));
    }
    let (lo, hi) = (i.min(j) as i64, i.max(j) as i64);
    let nf = norm_factor(q);
    ModeCoeffTable::build(label, n, q, r_max, |r| {
        Ok(nf * q_number((n as i64 - hi) * r, q)? * q_number(lo * r, q)? / q_number(n as i64 * r, q)?)
    })
}

/// Classical-limit table at p = q^{Nh}. Odd h:
/// −2(q − q⁻¹) ln q (−E((NM+1)/2)² [r]²/[Nr] + E(NM/2)(E(NM/2)+1) [(N−1)r][r]/[Nr]);
/// even h: the critical table.
pub fn h_limit_table(n: usize, m: i64, h: i64, q: Complex64, r_max: u32) -> Result<ModeCoeffTable> {
    check_rank(n)?;
    let label = ClassicalLimitLabel::new(h, m)?;
    let tag = TableLabel::HLimit { h, m };
    if !label.is_odd() {
        return higher_spin_coeffs(tag, n, 1, 1, q, r_max);
    }
    let (a, b) = label.odd_coefficients(n);
    let (a, b) = (a as f64, b as f64);
    let nf = norm_factor(q);
    let nn = n as i64;
    ModeCoeffTable::build(tag, n, q, r_max, |r| {
        let qr = q_number(r, q)?;
        let qnr = q_number(nn * r, q)?;
        Ok(nf * (-b * qr * qr / qnr + a * q_number((nn - 1) * r, q)? * qr / qnr))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn critical_n2_simplifies() {
        let q = c(0.5, 0.0);
        let t = critical_k0_table(2, q, 6).unwrap();
        for r in 1..=6 {
            let ri = r as i32;
            let expect = -2.0 * (q - q.inv()) * q.ln() * q_number(r, q).unwrap() / (q.powi(ri) + q.powi(-ri));
            assert!((t.get(r) - expect).norm() < 1e-13 * expect.norm());
        }
        assert_eq!(t.get(0), c(0.0, 0.0));
        assert_eq!(t.coeffs.len(), 13);
    }

    #[test]
    fn sl2_k0_is_critical_n2() {
        let q = c(0.45, 0.1);
        let a = sl2_sector_table(0, q, 8).unwrap();
        let b = critical_k0_table(2, q, 8).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-12 * b.scale().max(1.0));
    }

    #[test]
    fn higher_spin_reductions() {
        let q = c(0.5, 0.0);
        let t11 = higher_spin_k0_table(1, 1, 3, q, 5).unwrap();
        assert_eq!(t11.coeffs, critical_k0_table(3, q, 5).unwrap().coeffs);
        assert!(higher_spin_k0_table(2, 3, 3, q, 5).unwrap().scale() == 0.0);
        let a = higher_spin_k0_table(1, 2, 4, q, 5).unwrap();
        let b = higher_spin_k0_table(2, 1, 4, q, 5).unwrap();
        assert_eq!(a.coeffs, b.coeffs);
        assert!(higher_spin_k0_table(0, 1, 3, q, 5).is_err());
        assert!(higher_spin_k0_table(1, 4, 3, q, 5).is_err());
    }

    #[test]
    fn h_even_matches_critical() {
        let q = c(0.5, 0.0);
        let a = h_limit_table(3, 1, 2, q, 5).unwrap();
        assert_eq!(a.coeffs, critical_k0_table(3, q, 5).unwrap().coeffs);
    }

    #[test]
    fn h_odd_n2_m1_direct_substitution() {
        // E(3/2)² = 1, E(1)(E(1)+1) = 2
        let q = c(0.5, 0.0);
        let t = h_limit_table(2, 1, 1, q, 4).unwrap();
        for r in 1..=4i64 {
            let qn = |k: i64| (q.powi(k as i32) - q.powi(-(k as i32))) / (q - q.inv());
            let expect = -2.0 * (q - q.inv()) * q.ln() * (-qn(r) * qn(r) / qn(2 * r) + 2.0 * qn(r) * qn(r) / qn(2 * r));
            assert!((t.get(r) - expect).norm() < 1e-13 * expect.norm());
        }
    }

    #[test]
    fn unit_circle_rejected() {
        assert!(critical_k0_table(2, c(0.6, 0.8), 3).is_err());
    }

    proptest! {
        #[test]
        fn every_table_is_odd(n in 2usize..6, re in 0.2f64..0.8, im in -0.2f64..0.2, h in 1i64..4, m in -2i64..3, k in 0u32..4) {
            let q = c(re, im);
            let m = if m == 0 { 1 } else { m };
            let tables = [
                critical_k0_table(n, q, 6).unwrap(),
                sl2_sector_table(k, q, 6).unwrap(),
                higher_spin_k0_table(1, n - 1, n, q, 6).unwrap(),
                h_limit_table(n, m, h, q, 6).unwrap(),
            ];
            for t in &tables {
                prop_assert_eq!(t.oddness_residual(), 0.0);
            }
        }
    }
}

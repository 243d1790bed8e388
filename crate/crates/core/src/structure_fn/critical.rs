use num_complex::Complex64;

use crate::error::Result;
use crate::rmatrix::{build_r, RTensor};
use crate::special_fn::{tau_n, ModularParams, Spectral, TruncationConfig};

/// T(x) = τ_N(q^{1/2}x⁻¹) τ_N(q^{1/2−c}x) / (τ_N(q^{1/2}x) τ_N(q^{1/2−c}x⁻¹)).
///
/// In additive form the four z^{2/N−2} prefactors cancel exactly, so T is
/// branch-free.
pub fn t_function(x: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<Complex64> {
    let c = mp.require_c()?;
    let half = Complex64::new(0.5, 0.0);
    let tau = |s: Spectral| tau_n(s, mp, tc);
    let num = tau(x.inv().q_shift(mp, half))? * tau(x.q_shift(mp, half - c))?;
    let den = tau(x.q_shift(mp, half))? * tau(x.inv().q_shift(mp, half - c))?;
    tc.pole_check(den, || format!("T(x) denominator vanishes at x = {}", x.z()))?;
    Ok(num / den)
}

/// M(x) = (((R₂₁(x) R₂₁(q^{c+N}x)⁻¹ R₁₂(x⁻¹)⁻¹)^{t₂} R₁₂(q^c x⁻¹)^{t₂})^{t₂}.
pub fn m_function(x: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<RTensor> {
    let c = mp.require_c()?;
    let n = Complex64::new(mp.n() as f64, 0.0);
    let r21_x = build_r(x, mp, tc)?.swap_factors();
    let r21_shift_inv = build_r(x.q_shift(mp, c + n), mp, tc)?
        .swap_factors()
        .inverse("R21(q^{c+N} x)")?;
    let r12_inv_x_inv = build_r(x.inv(), mp, tc)?.inverse("R12(x^-1)")?;
    let inner = r21_x.mul(&r21_shift_inv).mul(&r12_inv_x_inv);
    let outer = build_r(x.inv().q_shift(mp, c), mp, tc)?.partial_transpose2();
    Ok(inner.partial_transpose2().mul(&outer).partial_transpose2())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn t_is_one_at_criticality_and_inverts() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(3, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        let x = Spectral::from_xi(c(0.37, 0.02));
        let t = t_function(x, &mp.critical(), &tc).unwrap();
        assert!((t - 1.0).norm() < 1e-13);
        let generic = mp.with_c(c(0.7, -0.2));
        let a = t_function(x, &generic, &tc).unwrap();
        let b = t_function(x.inv(), &generic, &tc).unwrap();
        assert!((a * b - 1.0).norm() < 1e-12);
    }

    #[test]
    fn t_equals_explicit_tau_composition() {
        let tc = TruncationConfig::default();
        let cc = c(0.4, 0.1);
        let mp = ModularParams::new(2, c(0.5, 0.0), c(0.3, 0.0)).unwrap().with_c(cc);
        let xi = c(-0.29, 0.01);
        let zeta = mp.zeta();
        let tau = |s: Complex64| tau_n(Spectral::from_xi(s), &mp, &tc).unwrap();
        let expect = tau(zeta / 2.0 - xi) * tau((0.5 - cc) * zeta + xi) / (tau(zeta / 2.0 + xi) * tau((0.5 - cc) * zeta - xi));
        let t = t_function(Spectral::from_xi(xi), &mp, &tc).unwrap();
        assert!((t - expect).norm() < 1e-14 * expect.norm());
    }

    #[test]
    fn m_is_identity_at_criticality() {
        let tc = TruncationConfig::default();
        for n in [2, 3] {
            let mp = ModularParams::new(n, c(0.5, 0.0), c(0.3, 0.0)).unwrap().critical();
            let m = m_function(Spectral::from_xi(c(0.41, -0.03)), &mp, &tc).unwrap();
            assert!(m.max_abs_diff(&RTensor::identity(n)) < 1e-12);
        }
    }

    #[test]
    fn m_is_finite_off_criticality() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(2, c(0.5, 0.0), c(0.3, 0.0)).unwrap().with_c(c(-1.3, 0.0));
        let m = m_function(Spectral::from_xi(c(0.3, 0.0)), &mp, &tc).unwrap();
        assert!(m.is_finite());
    }

    #[test]
    fn missing_c_is_an_error() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(2, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        assert!(t_function(Spectral::from_xi(c(0.3, 0.0)), &mp, &tc).is_err());
    }
}

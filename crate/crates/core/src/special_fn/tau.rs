use num_complex::Complex64;

use super::{big_theta, ModularParams, Spectral, TruncationConfig};
use crate::error::Result;

/// τ_N(z) = z^{2/N−2} Θ_{q^{2N}}(q z²) / Θ_{q^{2N}}(q z⁻²).
///
/// z^{2/N−2} is taken as e^{iπ(2/N−2)ξ}; with a [`Spectral`] built from the
/// principal logarithm this is the principal branch, and
/// [`Spectral::near_cut`] reports proximity to the cut.
pub fn tau_n(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<Complex64> {
    let n = mp.n() as f64;
    let nome = mp.nome();
    let z2 = z.z_pow(2.0);
    let num = big_theta(mp.q() * z2, nome, tc)?;
    let den = big_theta(mp.q() / z2, nome, tc)?;
    tc.pole_check(den, || format!("tau_N denominator Theta(q z^-2) vanishes at z = {}", z.z()))?;
    Ok(z.z_pow(2.0 / n - 2.0) * num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn inversion_and_period() {
        let tc = TruncationConfig::default();
        for (n, q) in [(2, c(0.5, 0.0)), (3, c(0.4, 0.1)), (4, c(0.6, -0.05))] {
            let mp = ModularParams::new(n, q, c(0.3, 0.0)).unwrap();
            for xi in [c(0.13, 0.02), c(-0.31, -0.04), c(0.55, 0.01)] {
                let z = Spectral::from_xi(xi);
                let a = tau_n(z, &mp, &tc).unwrap();
                let b = tau_n(z.inv(), &mp, &tc).unwrap();
                assert!((a * b - 1.0).norm() < 1e-12);
                let shifted = tau_n(z.q_shift(&mp, c(n as f64, 0.0)), &mp, &tc).unwrap();
                assert!((shifted - a).norm() < 1e-12 * a.norm().max(1.0));
            }
        }
    }

    #[test]
    fn value_at_one() {
        // τ_N(1)² = 1 by inversion; the Θ ratio is exactly 1 there, so the sign is +
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(3, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        let v = tau_n(Spectral::from_xi(c(0.0, 0.0)), &mp, &tc).unwrap();
        assert!((v - 1.0).norm() < 1e-15);
    }
}

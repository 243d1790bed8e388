use std::f64::consts::PI;

use num_complex::Complex64;

use super::{ThetaChar, TruncationConfig, I};
use crate::error::{Error, Result};

/// ϑ[γ₁;γ₂](ξ,τ) = Σ_m exp(iπ(m+γ₁)²τ + 2iπ(m+γ₁)(ξ+γ₂)), summed over
/// |m| ≤ `theta_terms`.
///
/// The first omitted terms on both sides bound the tail; the sum fails if
/// they exceed `tail_bound · max(1, |sum|)`.
pub fn theta_char(ch: ThetaChar, xi: Complex64, tau: Complex64, tc: &TruncationConfig) -> Result<Complex64> {
    if !(tau.im > 0.0) {
        return Err(Error::Domain(format!("theta needs Im tau > 0, got {}", tau.im)));
    }
    let (g1, g2) = ch.as_f64();
    let shift = xi + g2;
    let term = |m: i64| {
        let a = m as f64 + g1;
        (I * PI * (a * a * tau + 2.0 * a * shift)).exp()
    };
    let t = tc.theta_terms as i64;
    let sum: Complex64 = (-t..=t).map(term).sum();
    let tail = term(t + 1).norm() + term(-t - 1).norm();
    if !(tail <= tc.tail_bound * sum.norm().max(1.0)) {
        return Err(Error::Truncation {
            what: format!("theta[{};{}] at xi={xi}", ch.gamma1, ch.gamma2),
            tail,
            bound: tc.tail_bound,
        });
    }
    Ok(sum)
}

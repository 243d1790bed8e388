use num_complex::Complex64;

use super::exchange::y_exchange;
use super::critical::{m_function, t_function};
use crate::error::Result;
use crate::rmatrix::RTensor;
use crate::special_fn::{ModularParams, Spectral, TruncationConfig};

/// Central difference of T in c about c = −N with step `step`.
pub fn dt_dc_central(x: Spectral, mp: &ModularParams, step: f64, tc: &TruncationConfig) -> Result<Complex64> {
    let cr = -(mp.n() as f64);
    let plus = t_function(x, &mp.with_c(Complex64::new(cr + step, 0.0)), tc)?;
    let minus = t_function(x, &mp.with_c(Complex64::new(cr - step, 0.0)), tc)?;
    Ok((plus - minus) / (2.0 * step))
}

/// Central difference of M in c about c = −N with step `step`.
pub fn dm_dc_central(x: Spectral, mp: &ModularParams, step: f64, tc: &TruncationConfig) -> Result<RTensor> {
    let cr = -(mp.n() as f64);
    let plus = m_function(x, &mp.with_c(Complex64::new(cr + step, 0.0)), tc)?;
    let minus = m_function(x, &mp.with_c(Complex64::new(cr - step, 0.0)), tc)?;
    Ok(plus.sub(&minus).scale(Complex64::new(0.5 / step, 0.0)))
}

/// dY/dβ at β = 0 along q^{Nh} = p^{1−β}, by central difference.
///
/// This is the classical-limit bracket coefficient of t(z)t(w) − t(w)t(z)
/// and gives an oracle for f_h that does not share code with the series.
pub fn y_beta_derivative(
    n: usize,
    m: i64,
    h: i64,
    x: Complex64,
    q: Complex64,
    step: f64,
    tc: &TruncationConfig,
) -> Result<Complex64> {
    let e = (n as i64 * h) as f64;
    let p_at = |beta: f64| ((e / (1.0 - beta)) * q.ln()).exp();
    let plus = y_exchange(n, m, x, q, p_at(step), tc)?;
    let minus = y_exchange(n, m, x, q, p_at(-step), tc)?;
    Ok((plus - minus) / (2.0 * step))
}

/// Function-level Jacobi sum for a quadratic bracket {t(z),t(w)} = φ(w/z) t(z)t(w):
/// φ(u/w)[φ(w/z)+φ(u/z)] + φ(z/u)[φ(u/w)+φ(z/w)] + φ(w/z)[φ(z/u)+φ(w/u)].
pub fn jacobi_cyclic_sum<F>(phi: F, z: Complex64, w: Complex64, u: Complex64) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let (uw, wz, uz) = (phi(u / w)?, phi(w / z)?, phi(u / z)?);
    let (zu, zw, wu) = (phi(z / u)?, phi(z / w)?, phi(w / u)?);
    Ok(uw * (wz + uz) + zu * (uw + zw) + wz * (zu + wu))
}

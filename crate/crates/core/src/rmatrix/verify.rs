use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use super::build::{build_r, build_r_hat, elementary_matrices, g_sqrt};
use super::tensor::{kron, RTensor};
use crate::error::Result;
use crate::report::{Check, CheckReport};
use crate::sampling::Sampler;
use crate::special_fn::{ModularParams, Spectral, Tolerance, TruncationConfig};

pub const PROPERTY_NAMES: [&str; 5] = [
    "yang_baxter",
    "unitarity",
    "crossing",
    "antisymmetry",
    "quasi_periodicity",
];

/// Half-width (in units of log|q|) of the sampling annulus for z.
pub const SAMPLE_WIDTH: f64 = 0.5;
/// Largest |arg z|/π sampled.
pub const SAMPLE_ARG: f64 = 0.9;

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.norm()))
}

/// ‖R₁₂(z)R₁₃(w)R₂₃(w/z) − R₂₃(w/z)R₁₃(w)R₁₂(z)‖_max in the N³ space.
pub fn yang_baxter_residual(z: Spectral, w: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<f64> {
    let r12 = build_r(z, mp, tc)?.embed3((0, 1));
    let r13 = build_r(w, mp, tc)?.embed3((0, 2));
    let r23 = build_r(w.over(z), mp, tc)?.embed3((1, 2));
    let lhs = &r12 * &r13 * &r23;
    let rhs = &r23 * &r13 * &r12;
    Ok(max_abs(&(lhs - rhs)))
}

/// ‖R₁₂(z)R₂₁(z⁻¹) − 1‖_max.
pub fn unitarity_residual(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<f64> {
    let n = mp.n();
    let prod = build_r(z, mp, tc)?.mul(&build_r(z.inv(), mp, tc)?.swap_factors());
    Ok(prod.max_abs_diff(&RTensor::identity(n)))
}

/// ‖R₁₂(z)^{t₂} R₂₁(q^{−N}z⁻¹)^{t₂} − 1‖_max.
pub fn crossing_residual(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<f64> {
    let n = mp.n();
    let shifted = z.inv().q_shift(mp, Complex64::new(-(n as f64), 0.0));
    let prod = build_r(z, mp, tc)?
        .partial_transpose2()
        .mul(&build_r(shifted, mp, tc)?.swap_factors().partial_transpose2());
    Ok(prod.max_abs_diff(&RTensor::identity(n)))
}

/// ‖R₁₂(−z) − ω(g⁻¹⊗1)R₁₂(z)(g⊗1)‖_max with −z reached as ξ + 1.
pub fn antisymmetry_residual(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<f64> {
    let n = mp.n();
    let el = elementary_matrices(n);
    let id = DMatrix::<Complex64>::identity(n, n);
    let g_inv = el.g.adjoint();
    let rhs = build_r(z, mp, tc)?
        .sandwich(&kron(&g_inv, &id), &kron(&el.g, &id))
        .scale(el.omega);
    Ok(build_r(z.neg(), mp, tc)?.max_abs_diff(&rhs))
}

/// ‖R̂₁₂(−p^{1/2}z) − A⁻¹ R̂₂₁(z⁻¹)⁻¹ A‖_max, A = g^{1/2}hg^{1/2} ⊗ 1, with
/// −p^{1/2}z reached as ξ + 1 + τ.
pub fn quasi_periodicity_residual(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<f64> {
    let n = mp.n();
    let el = elementary_matrices(n);
    let s = g_sqrt(n);
    let id = DMatrix::<Complex64>::identity(n, n);
    let a1 = &s * &el.h * &s;
    let a1_inv = a1.clone().try_inverse().expect("g^{1/2} h g^{1/2} is unitary");
    let rhs = build_r_hat(z.inv(), mp, tc)?
        .swap_factors()
        .inverse("R̂₂₁(z⁻¹)")?
        .sandwich(&kron(&a1_inv, &id), &kron(&a1, &id));
    let lhs = build_r_hat(z.neg().shift(mp.tau()), mp, tc)?;
    Ok(lhs.max_abs_diff(&rhs))
}

/// All five residuals at one (z, w) pair.
pub fn property_residuals(z: Spectral, w: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<[f64; 5]> {
    Ok([
        yang_baxter_residual(z, w, mp, tc)?,
        unitarity_residual(z, mp, tc)?,
        crossing_residual(z, mp, tc)?,
        antisymmetry_residual(z, mp, tc)?,
        quasi_periodicity_residual(z, mp, tc)?,
    ])
}

/// Sample points for the property suite: pairs (z, w) in the annulus
/// |q|^{1/2} < |z|, |w| < |q|^{−1/2}.
pub fn sample_pairs(mp: &ModularParams, samples: usize, seed: u64) -> Vec<(Spectral, Spectral)> {
    let mut s = Sampler::new(seed, "rmatrix.properties");
    (0..samples)
        .map(|_| {
            let z = s.spectral(mp, SAMPLE_WIDTH, SAMPLE_ARG);
            let w = s.spectral(mp, SAMPLE_WIDTH, SAMPLE_ARG);
            (z, w)
        })
        .collect()
}

/// Run the five structural properties on `samples` random points.
///
/// Points where a factor hits a pole or an ill-conditioned inverse are
/// counted as skipped; a property with more than half its samples skipped
/// fails.
pub fn verify_properties(
    mp: &ModularParams,
    tc: &TruncationConfig,
    tol: &Tolerance,
    samples: usize,
    seed: u64,
) -> CheckReport {
    let pts = sample_pairs(mp, samples, seed);
    let rows: Vec<Option<[f64; 5]>> = pts
        .par_iter()
        .map(|&(z, w)| property_residuals(z, w, mp, tc).ok())
        .collect();
    let checks = PROPERTY_NAMES
        .iter()
        .enumerate()
        .map(|(k, name)| Check::from_residuals(*name, tol.abs, rows.iter().map(|r| r.map(|v| v[k]))))
        .collect();
    let mut params = BTreeMap::new();
    params.insert("N".into(), mp.n().to_string());
    params.insert("q".into(), mp.q().to_string());
    params.insert("p".into(), mp.p().to_string());
    params.insert("samples".into(), samples.to_string());
    params.insert("seed".into(), seed.to_string());
    CheckReport::new("rmatrix.properties", params, checks)
}

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{pole_ladder, shift_grid, Sector};
use crate::error::{Error, Result};

pub const QUADRATURE_NODES: usize = 2048;

fn nodes(radius: f64, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * (k as f64 + 0.5) / count as f64))
        .collect()
}

fn sample<F>(f: &F, radius: f64, count: usize) -> Result<Vec<(Complex64, Complex64)>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if !(radius > 0.0) || count == 0 {
        return Err(Error::Domain(format!("quadrature needs radius > 0 and nodes > 0, got {radius}, {count}")));
    }
    nodes(radius, count).into_par_iter().map(|x| Ok((x, f(x)?))).collect()
}

fn coefficient(values: &[(Complex64, Complex64)], power: i64) -> Complex64 {
    let p = power as i32;
    let sum: Complex64 = values.iter().map(|(x, v)| v * x.powi(-p)).sum();
    sum / values.len() as f64
}

/// Trapezoid estimate of the coefficient of x^power in the Laurent expansion
/// of f valid on |x| = radius.
pub fn laurent_coefficient<F>(f: F, radius: f64, power: i64, count: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    Ok(coefficient(&sample(&f, radius, count)?, power))
}

/// C_r = ½(a_{−2r}(ρ) + a_{−2r}(1/ρ)) for |r| ≤ r_max, a_s(ρ) the Laurent
/// coefficient on |x| = ρ. Both orderings of the contours enter with equal
/// weight.
pub fn symmetric_mode_coefficients<F>(f: F, radius: f64, r_max: u32, count: usize) -> Result<BTreeMap<i64, Complex64>>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    let inner = sample(&f, radius, count)?;
    let outer = sample(&f, radius.recip(), count)?;
    let r_max = r_max as i64;
    Ok((-r_max..=r_max)
        .map(|r| (r, 0.5 * (coefficient(&inner, -2 * r) + coefficient(&outer, -2 * r))))
        .collect())
}

/// |q|^{(P(k)+P(k+1))/2}, the mid-sector radius.
pub fn sector_radius(sector: &Sector, q: Complex64) -> f64 {
    q.norm().powf(sector.mid_exponent())
}

/// |q|^{e/2} with e the smallest positive exponent among the poles of
/// Σ_{u,v} f(q^{v−u}x), i.e. the ladder entries shifted by v − u.
pub fn higher_spin_radius(n: usize, i: usize, j: usize, q: Complex64) -> Result<f64> {
    let ladder = pole_ladder(n, (n * (i + j + 2)) as u64)?;
    let mut best = f64::INFINITY;
    for &u in &shift_grid(i) {
        for &v in &shift_grid(j) {
            let d = *(v - u).numer() as f64 / *(v - u).denom() as f64;
            for &p in &ladder.entries {
                for e in [p as f64 - d, -(p as f64) - d] {
                    if e > 1e-9 && e < best {
                        best = e;
                    }
                }
            }
        }
    }
    Ok(q.norm().powf(0.5 * best))
}

/// |q|^{e/2} with e the smallest positive pole exponent of f_h: the ladder
/// of f, joined for odd h by Nℓ + N/2 + {−1, 0, 1}.
pub fn h_limit_radius(n: usize, h: i64, q: Complex64) -> Result<f64> {
    let mut exps: Vec<f64> = pole_ladder(n, 2 * n as u64 + 2)?.entries.iter().map(|&p| p as f64).collect();
    if h % 2 != 0 {
        let half = 0.5 * n as f64;
        exps.extend([half - 1.0, half, half + 1.0]);
    }
    let best = exps.into_iter().filter(|&e| e > 1e-9).fold(f64::INFINITY, f64::min);
    Ok(q.norm().powf(0.5 * best))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_laurent_polynomial() {
        let f = |x: Complex64| Ok(3.0 * x * x - 2.0 / x + Complex64::new(0.0, 1.0) * x.powi(-4));
        let c2 = laurent_coefficient(f, 0.7, 2, 64).unwrap();
        let cm4 = laurent_coefficient(f, 1.3, -4, 64).unwrap();
        assert!((c2 - 3.0).norm() < 1e-13);
        assert!((cm4 - Complex64::new(0.0, 1.0)).norm() < 1e-13);
    }

    #[test]
    fn radius_validation() {
        assert!(laurent_coefficient(|x| Ok(x), 0.0, 1, 16).is_err());
    }

    #[test]
    fn radii() {
        let q = Complex64::new(0.5, 0.0);
        let l = pole_ladder(2, 10).unwrap();
        assert!((sector_radius(&l.sector(2).unwrap(), q) - 0.5f64.powf(2.5)).abs() < 1e-15);
        // i = j = 1 has the plain ladder, first positive pole at exponent 1
        assert!((higher_spin_radius(3, 1, 1, q).unwrap() - 0.5f64.sqrt()).abs() < 1e-15);
    }
}

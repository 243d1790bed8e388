use num_complex::Complex64;

use super::ClassicalLimitLabel;
use crate::error::{Error, Result};
use crate::special_fn::{ModularParams, TruncationConfig};

/// y/(1−y), refusing y within the pole threshold of 1.
fn frac(y: Complex64, tc: &TruncationConfig, rung: &dyn Fn() -> String) -> Result<Complex64> {
    let d = 1.0 - y;
    if d.norm() < tc.pole_threshold {
        return Err(Error::Pole(rung()));
    }
    Ok(y / d)
}

/// 2·y q^s/(1−y q^s) − y q^{s+2}/(1−y q^{s+2}) − y q^{s−2}/(1−y q^{s−2}) with y = x².
fn rung(y: Complex64, q: Complex64, s: i32, tc: &TruncationConfig, side: &str) -> Result<Complex64> {
    let name = |k: i32| move || format!("pole at {side}·q^{k} = 1 (rung shift {s})");
    Ok(2.0 * frac(y * q.powi(s), tc, &name(s))?
        - frac(y * q.powi(s + 2), tc, &name(s + 2))?
        - frac(y * q.powi(s - 2), tc, &name(s - 2))?)
}

/// One ladder: Σ_{ℓ≥0} Σ_j weight_j · rung(2Nℓ + offset_j), truncated when the
/// geometric tail estimate drops below `tail_bound`.
fn ladder(y: Complex64, n: usize, q: Complex64, rungs: &[(f64, i32)], tc: &TruncationConfig, side: &str) -> Result<Complex64> {
    let rq = q.norm();
    let step = rq.powi(2 * n as i32);
    let weight: f64 = rungs.iter().map(|(w, _)| w.abs()).sum();
    let min_offset = rungs.iter().map(|r| r.1).min().unwrap_or(0);
    let mut acc = Complex64::new(0.0, 0.0);
    for l in 0..tc.series_lmax {
        for &(w, off) in rungs {
            acc += w * rung(y, q, (2 * n * l) as i32 + off, tc, side)?;
        }
        // every later term has |y q^s| ≤ |y| |q|^{2N(l+1)+min_offset−2}
        let lead = y.norm() * rq.powi((2 * n * (l + 1)) as i32 + min_offset - 2);
        if lead < 0.5 {
            let tail = 4.0 * weight * lead / ((1.0 - lead) * (1.0 - step));
            if tail <= tc.tail_bound * acc.norm().max(1.0) {
                return Ok(acc);
            }
        }
    }
    Err(Error::Truncation {
        what: format!("ladder sum at {side} = {y}"),
        tail: y.norm() * rq.powi((2 * n * tc.series_lmax) as i32 - 2),
        bound: tc.tail_bound,
    })
}

/// The bracketed series shared by f and f_h:
/// Σ_ℓ Σ_j w_j rung(2Nℓ + s_j) − (c₀/2)·rung(0), antisymmetrised in x ↔ x⁻¹.
fn antisymmetrised(x: Complex64, n: usize, q: Complex64, rungs: &[(f64, i32)], edge: f64, tc: &TruncationConfig) -> Result<Complex64> {
    if x.norm() == 0.0 {
        return Err(Error::Domain("structure functions need x != 0".into()));
    }
    let part = |y: Complex64, side: &str| -> Result<Complex64> {
        Ok(ladder(y, n, q, rungs, tc, side)? - 0.5 * edge * rung(y, q, 0, tc, side)?)
    };
    let y = x * x;
    Ok(part(y, "x^2")? - part(y.inv(), "x^-2")?)
}

/// f(x) from (N, q) alone; the series is independent of p.
pub fn f_series(x: Complex64, n: usize, q: Complex64, tc: &TruncationConfig) -> Result<Complex64> {
    Ok(-2.0 * q.ln() * antisymmetrised(x, n, q, &[(1.0, 0)], 1.0, tc)?)
}

/// The critical-level Poisson structure function f(x) = dT/dc|_{c=−N}.
pub fn f_function(x: Complex64, mp: &ModularParams, tc: &TruncationConfig) -> Result<Complex64> {
    f_series(x, mp.n(), mp.q(), tc)
}

/// The classical-limit structure function f_h(x), parity-selected.
///
/// M enters with its sign and E is the floor, which is what the β-derivative
/// of Y gives for M < 0 as well.
pub fn f_h_function(x: Complex64, n: usize, m: i64, h: i64, q: Complex64, tc: &TruncationConfig) -> Result<Complex64> {
    let label = ClassicalLimitLabel::new(h, m)?;
    if n < 2 {
        return Err(Error::Range(format!("rank N must be at least 2, got {n}")));
    }
    let series = if label.is_odd() {
        let (a, b) = label.odd_coefficients(n);
        let (a, b) = (a as f64, b as f64);
        antisymmetrised(x, n, q, &[(a, 0), (b, n as i32)], a, tc)?
    } else {
        antisymmetrised(x, n, q, &[(1.0, 0)], 1.0, tc)?
    };
    Ok(label.prefactor(n, q) * series)
}

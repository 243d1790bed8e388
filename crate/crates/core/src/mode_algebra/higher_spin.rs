use num_complex::Complex64;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::special_fn::{ModularParams, TruncationConfig};
use crate::structure_fn::{f_function, y_exchange, SurfacePoint};

/// {−(i−1)/2, …, (i−1)/2} in steps of 1, exact halves.
pub fn shift_grid(i: usize) -> Vec<Rational64> {
    let top = Rational64::new(i as i64 - 1, 2);
    (0..i as i64).map(|a| -top + a).collect()
}

fn check_spins(i: usize, j: usize, n: usize) -> Result<()> {
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::Range(format!("spins must lie in 1..={n}, got ({i}, {j})")));
    }
    Ok(())
}

fn q_power(q: Complex64, d: Rational64) -> Complex64 {
    (q.ln() * (*d.numer() as f64 / *d.denom() as f64)).exp()
}

fn name_shift<T>(r: Result<T>, u: Rational64, v: Rational64) -> Result<T> {
    r.map_err(|e| match e {
        Error::Pole(msg) => Error::Pole(format!("shift (u, v) = ({u}, {v}): {msg}")),
        other => other,
    })
}

/// Σ_u Σ_v f(q^{v−u} x), the structure function of {s_i(z), s_j(w)} at c = −N.
pub fn classical_higher_spin_f(i: usize, j: usize, x: Complex64, mp: &ModularParams, tc: &TruncationConfig) -> Result<Complex64> {
    check_spins(i, j, mp.n())?;
    let mut acc = Complex64::new(0.0, 0.0);
    for &u in &shift_grid(i) {
        for &v in &shift_grid(j) {
            acc += name_shift(f_function(q_power(mp.q(), v - u) * x, mp, tc), u, v)?;
        }
    }
    Ok(acc)
}

/// ∏_u ∏_v Y(q^{v−u} x), the scalar exchange factor of s_i(z) s_j(w).
pub fn quantum_higher_spin_y(i: usize, j: usize, x: Complex64, sp: &SurfacePoint, tc: &TruncationConfig) -> Result<Complex64> {
    check_spins(i, j, sp.n)?;
    let mut acc = Complex64::new(1.0, 0.0);
    for &u in &shift_grid(i) {
        for &v in &shift_grid(j) {
            acc *= name_shift(y_exchange(sp.n, sp.m, q_power(sp.q, v - u) * x, sp.q, sp.p, tc), u, v)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure_fn::solve_surface;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn grids() {
        assert_eq!(shift_grid(1), vec![Rational64::from_integer(0)]);
        assert_eq!(shift_grid(2), vec![Rational64::new(-1, 2), Rational64::new(1, 2)]);
        assert_eq!(shift_grid(3).len(), 3);
    }

    #[test]
    fn spin_one_reduces() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(3, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        let x = c(0.3, 0.9);
        assert_eq!(classical_higher_spin_f(1, 1, x, &mp, &tc).unwrap(), f_function(x, &mp, &tc).unwrap());
        let sp = solve_surface(3, 1, mp.q(), mp.p()).unwrap();
        let y = y_exchange(3, 1, x, mp.q(), mp.p(), &tc).unwrap();
        assert!((quantum_higher_spin_y(1, 1, x, &sp, &tc).unwrap() - y).norm() < 1e-15);
    }

    #[test]
    fn swap_and_invert() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(3, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        let x = c(-0.3, 0.95);
        let a = classical_higher_spin_f(1, 2, 1.0 / x, &mp, &tc).unwrap();
        let b = classical_higher_spin_f(2, 1, x, &mp, &tc).unwrap();
        assert!((a + b).norm() < 1e-12);
    }

    #[test]
    fn spin_range() {
        let tc = TruncationConfig::default();
        let mp = ModularParams::new(3, c(0.5, 0.0), c(0.3, 0.0)).unwrap();
        assert!(classical_higher_spin_f(4, 1, c(0.3, 0.9), &mp, &tc).is_err());
    }
}

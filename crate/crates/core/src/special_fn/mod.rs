//! Scalar special functions: theta functions with rational characteristics,
//! single- and double-base q-Pochhammer products, the one-nome theta Θ, τ_N,
//! q-numbers and the integer part.
//!
//! Every infinite sum or product is truncated according to a
//! [`TruncationConfig`] and fails with [`Error::Truncation`] when the
//! estimated discarded tail exceeds `tail_bound`. Nothing here silently
//! returns a truncated value that is known to be inaccurate.

mod product;
mod qnum;
mod tau;
mod theta;

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use product::{big_theta, kappa_inv, q_pochhammer, q_pochhammer2, q_pochhammer2_truncated};
pub use qnum::{int_part, q_number};
pub use tau::tau_n;
pub use theta::theta_char;

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Distance (radians) from the negative real axis below which a principal
/// branch is flagged.
pub const DEFAULT_BRANCH_MARGIN: f64 = 1e-3;

/// The parameter point (N, q, p, c).
///
/// `q = e^{iπζ}` and `p = e^{2iπτ}` with principal logarithms; `c` is only
/// carried when a formula needs it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModularParams {
    n: usize,
    q: Complex64,
    p: Complex64,
    c: Option<Complex64>,
}

impl ModularParams {
    pub fn new(n: usize, q: Complex64, p: Complex64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("rank N must be at least 2, got {n}")));
        }
        check_nome("q", q)?;
        check_nome("p", p)?;
        let mp = Self { n, q, p, c: None };
        if mp.nome().norm() >= 1.0 {
            return Err(Error::Domain("|q^{2N}| must be below 1".into()));
        }
        Ok(mp)
    }

    pub fn with_c(mut self, c: Complex64) -> Self {
        self.c = Some(c);
        self
    }

    /// Same point at the critical level c = −N.
    pub fn critical(self) -> Self {
        let n = self.n as f64;
        self.with_c(Complex64::new(-n, 0.0))
    }

    /// Same (N, q, c) with a different elliptic nome.
    pub fn with_p(self, p: Complex64) -> Result<Self> {
        check_nome("p", p)?;
        Ok(Self { p, ..self })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    pub fn c(&self) -> Option<Complex64> {
        self.c
    }

    pub fn require_c(&self) -> Result<Complex64> {
        self.c
            .ok_or_else(|| Error::Domain("central charge c is required here".into()))
    }

    /// ζ with q = e^{iπζ}.
    pub fn zeta(&self) -> Complex64 {
        self.q.ln() / (I * PI)
    }

    /// τ with p = e^{2iπτ}; Im τ > 0 whenever |p| < 1.
    pub fn tau(&self) -> Complex64 {
        self.p.ln() / (I * 2.0 * PI)
    }

    /// The theta nome q^{2N}.
    pub fn nome(&self) -> Complex64 {
        self.q.powi(2 * self.n as i32)
    }

    /// q^a on the principal branch.
    pub fn q_pow(&self, a: Complex64) -> Complex64 {
        (a * self.q.ln()).exp()
    }

    /// p* = p·q^{−2c}.
    pub fn p_star(&self) -> Result<Complex64> {
        let c = self.require_c()?;
        Ok(self.p * self.q_pow(-2.0 * c))
    }
}

fn check_nome(name: &str, v: Complex64) -> Result<()> {
    let r = v.norm();
    if !r.is_finite() || r == 0.0 || r >= 1.0 {
        return Err(Error::Domain(format!("need 0 < |{name}| < 1, got |{name}| = {r}")));
    }
    Ok(())
}

/// Rational theta characteristic (γ₁, γ₂).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThetaChar {
    pub gamma1: Rational64,
    pub gamma2: Rational64,
}

impl ThetaChar {
    pub fn new(gamma1: Rational64, gamma2: Rational64) -> Self {
        Self { gamma1, gamma2 }
    }

    /// The odd characteristic (1/2, 1/2).
    pub fn half_half() -> Self {
        let h = Rational64::new(1, 2);
        Self::new(h, h)
    }

    /// (1/2 + α₁/N, 1/2 + α₂/N), the characteristics of the vertex weights.
    pub fn vertex(alpha1: usize, alpha2: usize, n: usize) -> Self {
        let h = Rational64::new(1, 2);
        let n = n as i64;
        Self::new(
            h + Rational64::new(alpha1 as i64, n),
            h + Rational64::new(alpha2 as i64, n),
        )
    }

    /// Both denominators divide 2N.
    pub fn fits_rank(&self, n: usize) -> bool {
        let two_n = 2 * n as i64;
        two_n % self.gamma1.denom() == 0 && two_n % self.gamma2.denom() == 0
    }

    pub(crate) fn as_f64(&self) -> (f64, f64) {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        (f(self.gamma1), f(self.gamma2))
    }
}

/// Truncation orders for every infinite sum and product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruncationConfig {
    /// Half-width of the bilateral theta sum.
    pub theta_terms: usize,
    /// Factors per base in infinite products.
    pub prod_terms: usize,
    /// Maximum ℓ in the ladder sums of f and f_h.
    pub series_lmax: usize,
    /// Largest acceptable estimate of a discarded tail (relative for products).
    pub tail_bound: f64,
    /// Denominators with modulus below this are treated as poles.
    pub pole_threshold: f64,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            theta_terms: 64,
            prod_terms: 64,
            series_lmax: 64,
            tail_bound: 1e-15,
            pole_threshold: 1e-12,
        }
    }
}

impl TruncationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.theta_terms == 0 || self.prod_terms == 0 || self.series_lmax == 0 {
            return Err(Error::Domain("truncation orders must be at least 1".into()));
        }
        if !(self.tail_bound > 0.0) || !(self.pole_threshold > 0.0) {
            return Err(Error::Domain("tail_bound and pole_threshold must be positive".into()));
        }
        Ok(())
    }

    /// Every cutoff multiplied by `factor`.
    pub fn scaled(&self, factor: usize) -> Self {
        Self {
            theta_terms: self.theta_terms * factor,
            prod_terms: self.prod_terms * factor,
            series_lmax: self.series_lmax * factor,
            ..*self
        }
    }

    pub(crate) fn pole_check(&self, value: Complex64, what: impl FnOnce() -> String) -> Result<Complex64> {
        if value.norm() < self.pole_threshold || !value.is_finite() {
            Err(Error::Pole(what()))
        } else {
            Ok(value)
        }
    }
}

/// Numerical tolerance budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if !(abs > 0.0) || !(rel > 0.0) {
            return Err(Error::Domain("tolerances must be positive".into()));
        }
        Ok(Self { abs, rel })
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { abs: 1e-8, rel: 1e-8 }
    }
}

/// Spectral parameter in additive form, z = e^{iπξ}.
///
/// The R-matrix and τ_N are not single-valued in z (the characteristics and
/// z^{2/N−2} pick up phases under ξ → ξ + 2), so all internal evaluation is
/// done in ξ. Multiplicative operations on z map to additive ones on ξ:
/// z⁻¹ ↦ −ξ, −z ↦ ξ + 1, q^a z ↦ ξ + aζ, p^{1/2} z ↦ ξ + τ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spectral {
    xi: Complex64,
}

impl Spectral {
    pub fn from_xi(xi: Complex64) -> Self {
        Self { xi }
    }

    /// Principal logarithm: Re ξ ∈ (−1, 1].
    pub fn from_z(z: Complex64) -> Result<Self> {
        if z.norm() == 0.0 || !z.is_finite() {
            return Err(Error::Domain("spectral parameter must be finite and non-zero".into()));
        }
        Ok(Self { xi: z.ln() / (I * PI) })
    }

    pub fn xi(&self) -> Complex64 {
        self.xi
    }

    pub fn z(&self) -> Complex64 {
        (I * PI * self.xi).exp()
    }

    /// z^a evaluated as e^{iπaξ}.
    pub fn z_pow(&self, a: f64) -> Complex64 {
        (I * PI * a * self.xi).exp()
    }

    pub fn inv(self) -> Self {
        Self { xi: -self.xi }
    }

    /// −z, reached as ξ + 1.
    pub fn neg(self) -> Self {
        Self { xi: self.xi + 1.0 }
    }

    pub fn shift(self, d: Complex64) -> Self {
        Self { xi: self.xi + d }
    }

    /// q^a·z.
    pub fn q_shift(self, mp: &ModularParams, a: Complex64) -> Self {
        self.shift(a * mp.zeta())
    }

    /// w/z for w = self.
    pub fn over(self, z: Spectral) -> Self {
        Self { xi: self.xi - z.xi }
    }

    /// Whether arg z lies within `margin` radians of ±π, i.e. whether the
    /// principal-branch reading of this point is close to the cut.
    pub fn near_cut(&self, margin: f64) -> bool {
        PI * self.xi.re.abs() > PI - margin
    }
}

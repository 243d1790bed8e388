//! Scalar structure functions of the critical-level Poisson bracket and of
//! the exchange algebras on Σ_{N,M}.
//!
//! * T(x), M(x): the scalar and matrix parts of the t–t exchange matrix.
//! * f(x): the Poisson structure function at c = −N (p-independent).
//! * F(M,x): the t–L exchange function, Y_{N,p,q,M}(x): the t–t exchange function.
//! * f_h(x): the classical limit at p = q^{Nh}.

mod critical;
mod derivative;
mod exchange;
mod series;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special_fn::{ModularParams, DEFAULT_BRANCH_MARGIN};

pub use critical::{m_function, t_function};
pub use derivative::{dm_dc_central, dt_dc_central, jacobi_cyclic_sum, y_beta_derivative};
pub use exchange::{f_exchange, y_exchange};
pub use series::{f_function, f_h_function, f_series};

/// A point of Σ_{N,M}: (−p^{1/2})^{NM} = q^{−c−N}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurfacePoint {
    pub n: usize,
    pub m: i64,
    pub q: Complex64,
    pub p: Complex64,
    pub c: Complex64,
}

impl SurfacePoint {
    /// The modular parameters with c filled in.
    pub fn params(&self) -> Result<ModularParams> {
        Ok(ModularParams::new(self.n, self.q, self.p)?.with_c(self.c))
    }

    /// |(−p^{1/2})^{NM} − q^{−c−N}|, relative to the left side when it exceeds 1.
    pub fn relation_residual(&self) -> f64 {
        let lhs = (-self.p.sqrt()).powi((self.n as i64 * self.m) as i32);
        let rhs = ((-self.c - self.n as f64) * self.q.ln()).exp();
        (lhs - rhs).norm() / lhs.norm().max(1.0)
    }
}

/// Solve the surface relation for c on principal branches:
/// c = −N − NM·log(−p^{1/2}) / log q.
///
/// The left side is an integer power, so the branch of log(−p^{1/2}) only
/// selects which of the equivalent c values is returned; a real positive p
/// puts −p^{1/2} on the negative axis and the principal value Im log = π is
/// used. Only q on the negative real axis is rejected.
pub fn solve_surface(n: usize, m: i64, q: Complex64, p: Complex64) -> Result<SurfacePoint> {
    if m == 0 {
        return Err(Error::Domain("surface index M must be non-zero".into()));
    }
    ModularParams::new(n, q, p)?;
    if q.arg().abs() > PI - DEFAULT_BRANCH_MARGIN {
        return Err(Error::Branch(format!("log q is on the cut for q = {q}")));
    }
    let nm = (n as i64 * m) as f64;
    // log(−√p) without signed-zero ambiguity: arg(−√p) = arg √p ± π in (−π, π]
    let s = p.sqrt();
    let turn = if s.arg() <= 0.0 { PI } else { -PI };
    let log_neg = s.ln() + Complex64::new(0.0, turn);
    let c = -(n as f64) - nm * log_neg / q.ln();
    let sp = SurfacePoint { n, m, q, p, c };
    let r = sp.relation_residual();
    if !(r < 1e-12) {
        return Err(Error::Branch(format!("surface relation residual {r:e} at q = {q}, p = {p}")));
    }
    Ok(sp)
}

/// Label of the classical limit p = q^{Nh}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassicalLimitLabel {
    pub h: i64,
    pub m: i64,
}

impl ClassicalLimitLabel {
    pub fn new(h: i64, m: i64) -> Result<Self> {
        if h == 0 || m == 0 {
            return Err(Error::Range(format!("need h != 0 and M != 0, got h = {h}, M = {m}")));
        }
        Ok(Self { h, m })
    }

    pub fn is_odd(&self) -> bool {
        self.h % 2 != 0
    }

    /// p = q^{Nh}.
    pub fn nome(&self, n: usize, q: Complex64) -> Complex64 {
        q.powi((n as i64 * self.h) as i32)
    }

    /// E(NM/2)(E(NM/2)+1) and E((NM+1)/2)², with E the floor for either sign of M.
    pub fn odd_coefficients(&self, n: usize) -> (i64, i64) {
        let nm = n as i64 * self.m;
        let a = nm.div_euclid(2);
        let b = (nm + 1).div_euclid(2);
        (a * (a + 1), b * b)
    }

    /// 𝒩_odd = 2Nh ln q or 𝒩_even = N²M(NM+1)h ln q.
    pub fn prefactor(&self, n: usize, q: Complex64) -> Complex64 {
        let nf = n as f64;
        let h = self.h as f64;
        if self.is_odd() {
            2.0 * nf * h * q.ln()
        } else {
            let m = self.m as f64;
            nf * nf * m * (nf * m + 1.0) * h * q.ln()
        }
    }
}

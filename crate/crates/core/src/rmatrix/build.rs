use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::tensor::{kron, RTensor};
use crate::error::Result;
use crate::special_fn::{kappa_inv, tau_n, theta_char, ModularParams, Spectral, ThetaChar, TruncationConfig, I};

/// The clock and shift matrices of Z_N together with ω = e^{2iπ/N}.
#[derive(Debug, Clone, PartialEq)]
pub struct Elementary {
    pub g: DMatrix<Complex64>,
    pub h: DMatrix<Complex64>,
    pub omega: Complex64,
}

/// g = diag(ω⁰, …, ω^{N−1}), h_{i,i+1} = 1 (cyclically).
pub fn elementary_matrices(n: usize) -> Elementary {
    let omega = (I * 2.0 * PI / n as f64).exp();
    let g = DMatrix::from_fn(n, n, |i, j| if i == j { omega.powi(i as i32) } else { Complex64::new(0.0, 0.0) });
    let h = DMatrix::from_fn(n, n, |i, j| {
        if (i + 1) % n == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    Elementary { g, h, omega }
}

/// g^{1/2} = diag(e^{iπ i/N}) on the principal branch.
pub fn g_sqrt(n: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            (I * PI * i as f64 / n as f64).exp()
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// g^{−1/2} = diag(e^{−iπ i/N}).
pub fn g_sqrt_inv(n: usize) -> DMatrix<Complex64> {
    g_sqrt(n).map(|v| v.conj())
}

fn mat_pow(m: &DMatrix<Complex64>, k: usize) -> DMatrix<Complex64> {
    let n = m.nrows();
    (0..k).fold(DMatrix::identity(n, n), |acc, _| acc * m)
}

/// I_{(α₁,α₂)} = g^{α₂} h^{α₁} with its exact inverse h^{−α₁} g^{−α₂}.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    pub alpha: (usize, usize),
    pub matrix: DMatrix<Complex64>,
    pub inverse: DMatrix<Complex64>,
}

impl WeightMatrix {
    pub fn new(alpha: (usize, usize), el: &Elementary) -> Self {
        let n = el.g.nrows();
        let (a1, a2) = (alpha.0 % n, alpha.1 % n);
        let matrix = mat_pow(&el.g, a2) * mat_pow(&el.h, a1);
        // g^{-1} = g^{N-1}, h^{-1} = h^{N-1}
        let inverse = mat_pow(&el.h, (n - a1) % n) * mat_pow(&el.g, (n - a2) % n);
        Self { alpha: (a1, a2), matrix, inverse }
    }

    /// The scalar λ with I_α⁻¹ = λ · I_{(−α₁,−α₂)}.
    pub fn inverse_phase(&self, el: &Elementary) -> Complex64 {
        let n = el.g.nrows();
        let neg = Self::new(((n - self.alpha.0) % n, (n - self.alpha.1) % n), el);
        // both matrices are monomial; compare at a non-zero entry
        let (r, c) = (0..n * n)
            .map(|k| (k / n, k % n))
            .find(|&(r, c)| neg.matrix[(r, c)].norm() > 0.5)
            .expect("monomial matrix has a non-zero entry");
        self.inverse[(r, c)] / neg.matrix[(r, c)]
    }
}

/// W_α(ξ,ζ,τ) = (1/N) ϑ_α(ξ + ζ/N, τ) / ϑ_α(ζ/N, τ) with characteristic
/// (1/2 + α₁/N, 1/2 + α₂/N).
pub fn weight_w(
    n: usize,
    alpha: (usize, usize),
    xi: Complex64,
    zeta: Complex64,
    tau: Complex64,
    tc: &TruncationConfig,
) -> Result<Complex64> {
    let ch = ThetaChar::vertex(alpha.0, alpha.1, n);
    let nf = n as f64;
    let den = theta_char(ch, zeta / nf, tau, tc)?;
    tc.pole_check(den, || format!("W_{alpha:?} denominator theta(zeta/N) vanishes"))?;
    Ok(theta_char(ch, xi + zeta / nf, tau, tc)? / den / nf)
}

/// R̃(z,q,p): the Z_N-vertex R-matrix, before the gauge transform.
pub fn build_r_tilde(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<RTensor> {
    let n = mp.n();
    let el = elementary_matrices(n);
    let (zeta, tau, xi) = (mp.zeta(), mp.tau(), z.xi());
    let mut sum = DMatrix::<Complex64>::zeros(n * n, n * n);
    for a1 in 0..n {
        for a2 in 0..n {
            let w = weight_w(n, (a1, a2), xi, zeta, tau, tc)?;
            let wm = WeightMatrix::new((a1, a2), &el);
            sum += kron(&wm.matrix, &wm.inverse) * w;
        }
    }
    let odd = ThetaChar::half_half();
    let den = theta_char(odd, xi + zeta, tau, tc)?;
    tc.pole_check(den, || format!("prefactor theta[1/2;1/2](xi+zeta) vanishes at z = {}", z.z()))?;
    let prefactor = z.z_pow(2.0 / n as f64 - 2.0) * kappa_inv(z.z_pow(2.0), mp, tc)? * theta_char(odd, zeta, tau, tc)? / den;
    RTensor::from_matrix(n, sum * prefactor)
}

/// R = (g^{1/2}⊗g^{1/2}) R̃ (g^{−1/2}⊗g^{−1/2}).
pub fn gauge_transform(rt: &RTensor) -> RTensor {
    let n = rt.n();
    let s = g_sqrt(n);
    let s_inv = g_sqrt_inv(n);
    rt.sandwich(&kron(&s, &s), &kron(&s_inv, &s_inv))
}

/// The gauge-transformed R(z).
pub fn build_r(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<RTensor> {
    Ok(gauge_transform(&build_r_tilde(z, mp, tc)?))
}

/// R̂(z) = τ_N(q^{1/2} z⁻¹) R(z).
pub fn build_r_hat(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<RTensor> {
    let t = tau_n(z.inv().q_shift(mp, Complex64::new(0.5, 0.0)), mp, tc)?;
    Ok(build_r(z, mp, tc)?.scale(t))
}

/// R̂*(z) = R̂(z) at the shifted nome p* = p q^{−2c}.
pub fn build_r_hat_star(z: Spectral, mp: &ModularParams, tc: &TruncationConfig) -> Result<RTensor> {
    let star = mp.with_p(mp.p_star()?)?;
    build_r_hat(z, &star, tc)
}

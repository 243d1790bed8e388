use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest condition number accepted when inverting an R-matrix factor.
pub const MAX_CONDITION: f64 = 1e8;

/// An N²×N² complex matrix addressed as R^{a,b}_{c,d}: row (a,b) = a·N + b,
/// column (c,d) = c·N + d, indices taken modulo N.
#[derive(Debug, Clone, PartialEq)]
pub struct RTensor {
    n: usize,
    m: DMatrix<Complex64>,
}

impl RTensor {
    pub fn zeros(n: usize) -> Self {
        Self { n, m: DMatrix::zeros(n * n, n * n) }
    }

    pub fn identity(n: usize) -> Self {
        Self { n, m: DMatrix::identity(n * n, n * n) }
    }

    pub fn from_matrix(n: usize, m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != n * n || m.ncols() != n * n {
            return Err(Error::Range(format!(
                "expected a {0}x{0} matrix, got {1}x{2}",
                n * n,
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(Self { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.m
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.m
    }

    fn idx(&self, a: usize, b: usize) -> usize {
        (a % self.n) * self.n + b % self.n
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> Complex64 {
        self.m[(self.idx(a, b), self.idx(c, d))]
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, d: usize, v: Complex64) {
        let (r, col) = (self.idx(a, b), self.idx(c, d));
        self.m[(r, col)] = v;
    }

    fn remap(&self, f: impl Fn(usize, usize, usize, usize) -> (usize, usize, usize, usize)) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let (a2, b2, c2, d2) = f(a, b, c, d);
                        out.set(a2, b2, c2, d2, self.get(a, b, c, d));
                    }
                }
            }
        }
        out
    }

    /// R₂₁ = P R₁₂ P: exchange of the two tensor factors.
    pub fn swap_factors(&self) -> Self {
        self.remap(|a, b, c, d| (b, a, d, c))
    }

    /// Transpose in the second factor: (R^{t₂})^{a,b}_{c,d} = R^{a,d}_{c,b}.
    pub fn partial_transpose2(&self) -> Self {
        self.remap(|a, b, c, d| (a, d, c, b))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { n: self.n, m: &self.m * &other.m }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { n: self.n, m: &self.m * s }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { n: self.n, m: &self.m - &other.m }
    }

    /// L · R · Rt for N²×N² matrices L, Rt.
    pub fn sandwich(&self, left: &DMatrix<Complex64>, right: &DMatrix<Complex64>) -> Self {
        Self { n: self.n, m: left * &self.m * right }
    }

    /// 2-norm condition number from the singular values.
    pub fn condition(&self) -> f64 {
        let sv = self.m.clone().singular_values();
        let max = sv.max();
        let min = sv.min();
        if min == 0.0 {
            f64::INFINITY
        } else {
            max / min
        }
    }

    /// Inverse, refusing factors whose condition estimate exceeds
    /// [`MAX_CONDITION`]. `factor` names the matrix in the error.
    pub fn inverse(&self, factor: &str) -> Result<Self> {
        let condition = self.condition();
        if !(condition < MAX_CONDITION) {
            return Err(Error::Singular { factor: factor.into(), condition });
        }
        let m = self
            .m
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Singular { factor: factor.into(), condition })?;
        Ok(Self { n: self.n, m })
    }

    pub fn max_abs(&self) -> f64 {
        self.m.iter().fold(0.0, |acc, v| acc.max(v.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m.iter().zip(other.m.iter()).fold(0.0, |acc, (a, b)| acc.max((a - b).norm()))
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().all(|v| v.is_finite())
    }

    /// Embedding into the three-fold space (dimension N³) acting on the
    /// ordered factor pair `slots` ∈ {(0,1), (0,2), (1,2)}.
    pub fn embed3(&self, slots: (usize, usize)) -> DMatrix<Complex64> {
        let n = self.n;
        let dim = n * n * n;
        let idx = |i: [usize; 3]| (i[0] * n + i[1]) * n + i[2];
        let spectator = 3 - slots.0 - slots.1;
        let mut out = DMatrix::zeros(dim, dim);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let v = self.get(a, b, c, d);
                        if v == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        for s in 0..n {
                            let mut row = [0; 3];
                            let mut col = [0; 3];
                            row[slots.0] = a;
                            row[slots.1] = b;
                            col[slots.0] = c;
                            col[slots.1] = d;
                            row[spectator] = s;
                            col[spectator] = s;
                            out[(idx(row), idx(col))] = v;
                        }
                    }
                }
            }
        }
        out
    }
}

/// Kronecker product of two square matrices, first factor as the slow index.
pub fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, seed: u64) -> RTensor {
        let mut t = RTensor::zeros(n);
        let mut s = seed;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        let re = ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
                        let im = ((s >> 20) as f64 / (1u64 << 44) as f64) - 0.5;
                        t.set(a, b, c, d, Complex64::new(re, im));
                    }
                }
            }
        }
        t
    }

    #[test]
    fn involutions_are_exact() {
        for n in 2..5 {
            let t = sample(n, n as u64);
            assert_eq!(t.swap_factors().swap_factors(), t);
            assert_eq!(t.partial_transpose2().partial_transpose2(), t);
        }
    }

    #[test]
    fn matmul_agrees_with_index_contraction() {
        for n in 2..5 {
            let (x, y) = (sample(n, 3), sample(n, 7));
            let k = x.mul(&y);
            let mut worst: f64 = 0.0;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            let mut acc = Complex64::new(0.0, 0.0);
                            for e in 0..n {
                                for f in 0..n {
                                    acc += x.get(a, b, e, f) * y.get(e, f, c, d);
                                }
                            }
                            worst = worst.max((acc - k.get(a, b, c, d)).norm());
                        }
                    }
                }
            }
            assert!(worst < 1e-13, "n={n}: {worst}");
        }
    }

    #[test]
    fn embeddings_match_kronecker_forms() {
        let n = 3;
        let t = sample(n, 11);
        let id = DMatrix::<Complex64>::identity(n, n);
        let e12 = t.embed3((0, 1));
        assert_eq!(e12, kron(t.matrix(), &id));
        let e23 = t.embed3((1, 2));
        assert_eq!(e23, kron(&id, t.matrix()));
        // (1,3) embedding equals P₂₃ (R ⊗ 1) P₂₃
        let dim = n * n * n;
        let mut p23 = DMatrix::<Complex64>::zeros(dim, dim);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    p23[((i * n + j) * n + k, (i * n + k) * n + j)] = Complex64::new(1.0, 0.0);
                }
            }
        }
        let e13 = &p23 * &e12 * &p23;
        assert_eq!(t.embed3((0, 2)), e13);
    }

    #[test]
    fn singular_inverse_is_named() {
        let z = RTensor::zeros(2);
        match z.inverse("zero") {
            Err(Error::Singular { factor, .. }) => assert_eq!(factor, "zero"),
            other => panic!("{other:?}"),
        }
    }
}

//! Deterministic sample generation. Each check draws from its own stream,
//! keyed by the run seed and the check name, so adding or reordering checks
//! never perturbs the points another check sees.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::special_fn::{ModularParams, Spectral};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: &str) -> Self {
        // FNV-1a over the stream name
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in stream.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        Self { rng: ChaCha8Rng::seed_from_u64(seed ^ h) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn signed(&mut self, lo: f64, hi: f64) -> f64 {
        let v = self.uniform(lo, hi);
        if self.rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    }

    /// Spectral point with |z| in the annulus |q|^{w} < |z| < |q|^{−w} and
    /// |arg z| ≤ `arg_max`·π.
    pub fn spectral(&mut self, mp: &ModularParams, width: f64, arg_max: f64) -> Spectral {
        let log_q = mp.q().norm().ln();
        let log_r = self.uniform(-width, width) * log_q.abs();
        let re = self.uniform(-arg_max, arg_max);
        // |z| = e^{−π Im ξ}
        Spectral::from_xi(Complex64::new(re, -log_r / PI))
    }

    /// Spectral point with x² bounded away from the positive real axis:
    /// arg x ∈ ±[lo, hi]·π (mod sign), |x| = |q|^{±width}.
    pub fn structure_point(&mut self, mp: &ModularParams, width: f64) -> Spectral {
        let log_q = mp.q().norm().ln();
        let log_r = self.uniform(-width, width) * log_q.abs();
        let re = self.signed(STRUCTURE_ARG.0, STRUCTURE_ARG.1);
        Spectral::from_xi(Complex64::new(re, -log_r / PI))
    }
}

/// Argument window (in units of π) used for structure-function samples; keeps
/// x² at angular distance ≥ 0.4π from the positive real axis, where the
/// l = 0 poles of f and f_h sit.
pub const STRUCTURE_ARG: (f64, f64) = (0.2, 0.8);

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use super::ModeCoeffTable;
use crate::error::{Error, Result};

/// Largest |n|, |m| accepted by [`bracket`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ModeWindow {
    pub max_index: i64,
}

impl Default for ModeWindow {
    fn default() -> Self {
        Self { max_index: 1000 }
    }
}

/// Σ c·t_{k₁}t_{k₂} over commuting symbols, keyed by (k₁ ≤ k₂); exact zeros
/// are dropped.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct FormalBracket {
    pub terms: BTreeMap<(i64, i64), Complex64>,
}

impl FormalBracket {
    pub fn add_term(&mut self, k1: i64, k2: i64, coeff: Complex64) {
        let key = (k1.min(k2), k1.max(k2));
        let v = *self.terms.entry(key).or_default() + coeff;
        if v == Complex64::new(0.0, 0.0) {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn add(&self, other: &FormalBracket) -> FormalBracket {
        let mut out = self.clone();
        for (&(a, b), &v) in &other.terms {
            out.add_term(a, b, v);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// {t_n, t_m} = Σ_{|r| ≤ r_max} C_r t_{n−2r} t_{m+2r}.
pub fn bracket(table: &ModeCoeffTable, n: i64, m: i64, window: ModeWindow) -> Result<FormalBracket> {
    if n.abs() > window.max_index || m.abs() > window.max_index {
        return Err(Error::Range(format!("modes ({n}, {m}) outside the window |k| <= {}", window.max_index)));
    }
    let mut out = FormalBracket::default();
    for (&r, &c) in &table.coeffs {
        if c != Complex64::new(0.0, 0.0) {
            out.add_term(n - 2 * r, m + 2 * r, c);
        }
    }
    Ok(out)
}

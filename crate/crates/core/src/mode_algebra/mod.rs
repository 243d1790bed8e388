//! Mode-level structure of the critical-level and classical-limit brackets:
//! pole ladders and sectors, coefficient tables C_r of
//! {t_n, t_m} = Σ_r C_r t_{n−2r} t_{m+2r}, formal brackets over commuting
//! symbols, higher-spin structure functions and a contour-quadrature oracle.

mod bracket;
mod higher_spin;
mod quadrature;
mod tables;

use serde::Serialize;

use crate::error::{Error, Result};

pub use bracket::{bracket, FormalBracket, ModeWindow};
pub use higher_spin::{classical_higher_spin_f, quantum_higher_spin_y, shift_grid};
pub use quadrature::{
    h_limit_radius, higher_spin_radius, laurent_coefficient, sector_radius, symmetric_mode_coefficients, QUADRATURE_NODES,
};
pub use tables::{critical_k0_table, h_limit_table, higher_spin_k0_table, sl2_sector_table, ModeCoeffTable, TableLabel};

/// Sorted, deduplicated exponents P(k) of |q|^{−1} at which f has poles:
/// {0, 1} ∪ {Nl − 1, Nl, Nl + 1 : l ≥ 1}, up to `cutoff`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PoleLadder {
    pub n: usize,
    pub entries: Vec<u64>,
}

pub fn pole_ladder(n: usize, cutoff: u64) -> Result<PoleLadder> {
    if n < 2 {
        return Err(Error::Range(format!("rank N must be at least 2, got {n}")));
    }
    if cutoff < 1 {
        return Err(Error::Range("pole ladder cutoff must be at least 1".into()));
    }
    let mut entries = vec![0, 1];
    let n = n as u64;
    let mut l = 1;
    while n * l - 1 <= cutoff {
        entries.extend([n * l - 1, n * l, n * l + 1]);
        l += 1;
    }
    entries.retain(|&e| e <= cutoff);
    entries.sort_unstable();
    entries.dedup();
    Ok(PoleLadder { n: n as usize, entries })
}

impl PoleLadder {
    /// Sector k, the annulus between P(k) and P(k+1).
    pub fn sector(&self, k: usize) -> Result<Sector> {
        match (self.entries.get(k), self.entries.get(k + 1)) {
            (Some(&lo), Some(&hi)) => Ok(Sector { k, lower_exponent: lo as f64, upper_exponent: hi as f64 }),
            _ => Err(Error::Range(format!("sector {k} lies beyond the ladder cutoff"))),
        }
    }
}

/// R₁/R₂ ∈ (|q|^{−P(k)}, |q|^{−P(k+1)}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sector {
    pub k: usize,
    pub lower_exponent: f64,
    pub upper_exponent: f64,
}

impl Sector {
    pub fn mid_exponent(&self) -> f64 {
        0.5 * (self.lower_exponent + self.upper_exponent)
    }
}

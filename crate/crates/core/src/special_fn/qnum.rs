use num_complex::Complex64;

use crate::error::{Error, Result};

/// [r]_q = (q^r − q^{−r}) / (q − q^{−1}).
///
/// Evaluated from |r| and a sign so that [−r]_q = −[r]_q holds bit for bit.
pub fn q_number(r: i64, q: Complex64) -> Result<Complex64> {
    if q.norm() == 0.0 {
        return Err(Error::Domain("q-number needs q != 0".into()));
    }
    let den = q - q.inv();
    if den.norm() < 1e-14 {
        return Err(Error::Domain(format!("q-number needs q^2 != 1, got q = {q}")));
    }
    let k = i32::try_from(r.unsigned_abs()).map_err(|_| Error::Range(format!("q-number index {r} too large")))?;
    let v = (q.powi(k) - q.powi(-k)) / den;
    Ok(if r < 0 { -v } else { v })
}

/// Integer part E(x), implemented as floor for either sign; E(−1/2) = −1
/// is what the M < 0 classical limits need.
pub fn int_part(x: f64) -> i64 {
    x.floor() as i64
}

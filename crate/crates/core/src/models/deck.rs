//! Expected types drawn from a uniform deck of `k` types times `n` copies.

use crate::error::{check_range, Result};
use crate::sampling::DeckSpec;

/// Expected distinct types after drawing `m` cards without replacement, by
/// iterating `E(m+1) = E(m) + n(k - E(m)) / (kn - m)` from `E(0) = 0`.
///
/// The recursion is exact for the mean because the chance of a new type is
/// linear in the number of types already seen.
pub fn deck_types_recursive(spec: DeckSpec, m: usize) -> Result<f64> {
    let total = spec.total_tokens();
    check_range("m", m as f64, 0.0, total as f64, "[0, k*n]")?;
    let curve = deck_types_recursive_curve(spec);
    Ok(curve[m])
}

/// The whole recursion, `E(0) ..= E(kn)`.
pub fn deck_types_recursive_curve(spec: DeckSpec) -> Vec<f64> {
    let k = spec.types as f64;
    let n = spec.copies as f64;
    let total = spec.total_tokens();
    let mut out = Vec::with_capacity(total + 1);
    let mut e = 0.0;
    out.push(e);
    for m in 0..total {
        e += n * (k - e) / (total - m) as f64;
        out.push(e);
    }
    out
}

/// Smooth approximation of the recursion: `k - k (1 - m/(kn))^n`.
pub fn deck_types_analytic(spec: DeckSpec, m: f64) -> Result<f64> {
    let total = spec.total_tokens() as f64;
    check_range("m", m, 0.0, total, "[0, k*n]")?;
    let k = spec.types as f64;
    Ok(k - k * (1.0 - m / total).powi(spec.copies as i32))
}

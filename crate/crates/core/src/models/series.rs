//! Corpus-level models driven by the observed legomena vector.

use crate::corpus::LegomenaVector;
use crate::error::{check_range, Error, Result};

/// Terms further than this factor below the column mode are dropped.
const PMF_CUTOFF: f64 = 1e-30;

/// Expected types in a random sample of `m` tokens, `N - sum_n k_n (1 - m/M)^n`.
///
/// `tokens` must equal `sum n * k_n`.
pub fn series_model(kvec: &LegomenaVector, tokens: u64, m: f64) -> Result<f64> {
    let weighted = kvec.token_count();
    if weighted != tokens {
        return Err(Error::InconsistentVector {
            weighted: weighted as f64,
            tokens: tokens as f64,
        });
    }
    check_range("m", m, 0.0, tokens as f64, "[0, M]")?;
    if tokens == 0 {
        return Ok(0.0);
    }
    let keep = 1.0 - m / tokens as f64;
    let unseen: f64 = kvec
        .counts()
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(n, &k)| k as f64 * keep.powi(n as i32))
        .sum();
    Ok(kvec.type_count() as f64 - unseen)
}

/// Expected legomena vector after keeping each token independently with
/// probability `x`:
///
/// `k_n(x) = sum_{i >= n} C(i, n) k_i x^n (1 - x)^(i - n)`.
///
/// Entry 0 collects the types that were never drawn. The output has the same
/// length as the input and sums to `N`. Accepts real-valued input so that
/// predicted vectors (e.g. a perfect-Zipf vector) can be transformed too.
///
/// Each column is a binomial distribution. It is built outward from its mode by
/// the ratio recurrence and normalized to sum 1, so nothing overflows even for
/// frequencies in the tens of thousands, and terms negligible next to the mode
/// are skipped.
pub fn transform_kvector(kvec: &[f64], x: f64) -> Result<Vec<f64>> {
    check_range("x", x, 0.0, 1.0, "[0, 1]")?;
    let len = kvec.len().max(1);
    let mut out = vec![0.0; len];
    if x == 0.0 {
        out[0] = kvec.iter().sum();
        return Ok(out);
    }
    if x == 1.0 {
        out[..kvec.len()].copy_from_slice(kvec);
        return Ok(out);
    }

    let odds = x / (1.0 - x);
    let mut column: Vec<f64> = Vec::new();
    let mut below: Vec<f64> = Vec::new();
    for (i, &weight) in kvec.iter().enumerate() {
        if weight == 0.0 {
            continue;
        }
        if i == 0 {
            out[0] += weight;
            continue;
        }
        let mode = (((i + 1) as f64 * x).floor() as usize).min(i);

        // Relative masses: column[j] holds pmf(lo + j) / pmf(mode).
        column.clear();
        below.clear();
        let mut q = 1.0;
        let mut lo = mode;
        while lo > 0 {
            // pmf(n - 1) / pmf(n) = n / (i - n + 1) / odds
            q *= lo as f64 / ((i - lo + 1) as f64 * odds);
            if q < PMF_CUTOFF {
                break;
            }
            lo -= 1;
            below.push(q);
        }
        column.extend(below.iter().rev());
        column.push(1.0);
        let mut q = 1.0;
        let mut n = mode;
        while n < i {
            // pmf(n + 1) / pmf(n) = (i - n) / (n + 1) * odds
            q *= (i - n) as f64 / (n + 1) as f64 * odds;
            if q < PMF_CUTOFF {
                break;
            }
            n += 1;
            column.push(q);
        }

        let total: f64 = column.iter().sum();
        let scale = weight / total;
        for (j, &mass) in column.iter().enumerate() {
            out[lo + j] += mass * scale;
        }
    }
    Ok(out)
}

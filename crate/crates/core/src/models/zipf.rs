//! The perfect-Zipf spectrum and the logarithmic optimum-sample model.
//!
//! An optimum sample of `N_z` types has `k_n = N_z / (n (n + 1))` n-legomena.
//! Sampling a proportion `x` of it (or extrapolating to `x > 1`) gives expected
//! types `E(x) = N_z x ln(x) / (x - 1)` and closed forms for `k_0 ..= k_5`.
//!
//! Every closed form has a removable singularity at `x = 1`, and the closer
//! orders lose digits to cancellation well before it (`k_5` divides by
//! `(x - 1)^6`). Inside `|x - 1| <= 0.5` we therefore sum the convergent series
//! obtained by transforming the perfect-Zipf vector instead:
//!
//! `k_n(x) / N_z = x^n * sum_{i >= 0} C(n + i, n) (1 - x)^i / ((n + i)(n + i + 1))`

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Highest order with a closed form.
pub const MAX_CLOSED_FORM_ORDER: usize = 5;

/// Half-width of the window around `x = 1` where the series replaces the closed forms.
const SERIES_WINDOW: f64 = 0.5;
const SERIES_MAX_TERMS: usize = 400;

/// A perfect-Zipf spectrum truncated to `truncation` entries past `k_0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerfectZipf {
    pub optimum_types: f64,
    pub truncation: usize,
}

impl PerfectZipf {
    pub fn new(optimum_types: f64, truncation: usize) -> Result<Self> {
        if !(optimum_types > 0.0 && optimum_types.is_finite()) {
            return Err(Error::InvalidParameter("N_z must be positive and finite"));
        }
        if truncation == 0 {
            return Err(Error::InvalidParameter("truncation must be at least 1"));
        }
        Ok(Self {
            optimum_types,
            truncation,
        })
    }

    /// `(0, N_z/2, N_z/6, ..., N_z/(T(T+1)))`.
    pub fn kvector(&self) -> Vec<f64> {
        std::iter::once(0.0)
            .chain((1..=self.truncation).map(|n| self.optimum_types / (n as f64 * (n + 1) as f64)))
            .collect()
    }
}

pub fn perfect_zipf_kvector(optimum_types: f64, truncation: usize) -> Result<Vec<f64>> {
    Ok(PerfectZipf::new(optimum_types, truncation)?.kvector())
}

/// Expected frequency of the `rank`-th most common word in an optimum sample,
/// `floor(N_z / r)`. Display only; nothing is fitted against it.
pub fn ranked_frequency(optimum_types: f64, rank: u64) -> u64 {
    if rank == 0 {
        return 0;
    }
    (optimum_types / rank as f64).floor() as u64
}

/// Size `(M_z, N_z)` of the optimum sample parametrizing the logarithmic model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogModelParams {
    /// `M_z`
    pub optimum_tokens: f64,
    /// `N_z`
    pub optimum_types: f64,
}

impl LogModelParams {
    pub fn new(optimum_tokens: f64, optimum_types: f64) -> Result<Self> {
        if !(optimum_tokens > 0.0 && optimum_tokens.is_finite()) {
            return Err(Error::InvalidParameter("M_z must be positive and finite"));
        }
        if !(optimum_types > 0.0 && optimum_types.is_finite()) {
            return Err(Error::InvalidParameter("N_z must be positive and finite"));
        }
        Ok(Self {
            optimum_tokens,
            optimum_types,
        })
    }

    fn scale(&self, m: f64) -> Result<f64> {
        if m.is_nan() || m <= 0.0 || m.is_infinite() {
            return Err(Error::OutOfRange {
                what: "m",
                value: m,
                range: "(0, inf)",
            });
        }
        Ok(m / self.optimum_tokens)
    }
}

/// Expected types after `m` tokens: `N_z ln(x) x / (x - 1)` with `x = m / M_z`.
pub fn log_model_types(params: &LogModelParams, m: f64) -> Result<f64> {
    let x = params.scale(m)?;
    Ok(params.optimum_types * unit_types(x))
}

/// Expected n-legomena after `m` tokens, `n <= 5`. `n = 0` is the number of
/// optimum-sample types not yet seen, `N_z - E(x)`.
pub fn log_model_legomena(params: &LogModelParams, n: usize, m: f64) -> Result<f64> {
    if n > MAX_CLOSED_FORM_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    let x = params.scale(m)?;
    Ok(params.optimum_types * unit_legomena(n, x))
}

/// Fraction of types that are hapaxes at scale `x`: `1/ln(x) + 1/(1 - x)`.
///
/// Tends to 1 as `x -> 0+`, equals 1/2 at `x = 1`, and decreases strictly.
pub fn hapax_fraction_model(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 || x.is_infinite() {
        return Err(Error::OutOfRange {
            what: "x",
            value: x,
            range: "(0, inf)",
        });
    }
    if (x - 1.0).abs() <= SERIES_WINDOW {
        return Ok(series_legomena(1, x) / (1.0 - series_legomena(0, x)));
    }
    Ok(1.0 / x.ln() + 1.0 / (1.0 - x))
}

/// Partial sum `N_z - N_z sum_{n=1..terms} (1 - x)^n / (n (n + 1))`, which
/// converges to `log_model_types` at `m = x M_z` as `terms` grows.
pub fn series_to_log_convergence(optimum_types: f64, x: f64, terms: usize) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::OutOfRange {
            what: "x",
            value: x,
            range: "(0, 1]",
        });
    }
    let s = 1.0 - x;
    let mut power = 1.0;
    let mut tail = 0.0;
    for n in 1..=terms {
        power *= s;
        tail += power / (n as f64 * (n + 1) as f64);
    }
    Ok(optimum_types - optimum_types * tail)
}

/// `E(x) / N_z`.
pub(crate) fn unit_types(x: f64) -> f64 {
    if (x - 1.0).abs() <= SERIES_WINDOW {
        return 1.0 - series_legomena(0, x);
    }
    x * x.ln() / (x - 1.0)
}

/// `k_n(x) / N_z` for `n <= 5`.
pub(crate) fn unit_legomena(n: usize, x: f64) -> f64 {
    debug_assert!(n <= MAX_CLOSED_FORM_ORDER);
    if (x - 1.0).abs() <= SERIES_WINDOW {
        return series_legomena(n, x);
    }
    let ln = x.ln();
    let d = x - 1.0;
    match n {
        0 => (x - ln * x - 1.0) / d,
        1 => (x * x - ln * x - x) / (d * d),
        2 => (x.powi(3) - 2.0 * ln * x * x - x) / (2.0 * d.powi(3)),
        3 => {
            (2.0 * x.powi(4) + 3.0 * x.powi(3) - 6.0 * ln * x.powi(3) - 6.0 * x * x + x)
                / (6.0 * d.powi(4))
        }
        4 => {
            (3.0 * x.powi(5) + 10.0 * x.powi(4) - 12.0 * x.powi(4) * ln - 18.0 * x.powi(3)
                + 6.0 * x * x
                - x)
                / (12.0 * d.powi(5))
        }
        5 => {
            (12.0 * x.powi(6) + 65.0 * x.powi(5) - 60.0 * x.powi(5) * ln - 120.0 * x.powi(4)
                + 60.0 * x.powi(3)
                - 20.0 * x * x
                + 3.0 * x)
                / (60.0 * d.powi(6))
        }
        _ => unreachable!(),
    }
}

/// Binomial transform of the unit perfect-Zipf vector, valid for `0 < x < 2`.
/// For `n = 0` this is `sum_{j >= 1} (1 - x)^j / (j (j + 1))`.
fn series_legomena(n: usize, x: f64) -> f64 {
    let s = 1.0 - x;
    let mut sum = 0.0;
    // the i = 0 term of k_0 is the k_0 = 0 entry itself
    let start = usize::from(n == 0);
    // C(n + i, n) * s^i
    let mut coeff = s.powi(start as i32);
    for i in start..SERIES_MAX_TERMS {
        let j = (n + i) as f64;
        let term = coeff / (j * (j + 1.0));
        sum += term;
        if term.abs() <= 1e-18 * sum.abs() {
            break;
        }
        coeff *= s * (n + i + 1) as f64 / (i + 1) as f64;
    }
    if n == 0 {
        sum
    } else {
        x.powi(n as i32) * sum
    }
}

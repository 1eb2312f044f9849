//! Parameter fitting and model scoring.
//!
//! The optimum sample is located from whole-corpus statistics only: the
//! observed hapax proportion fixes the scale `z` by inverting the hapax
//! fraction, then `M_z = M / z` and `N_z` is chosen so the model passes
//! through `(M, N)`. The Heaps' law baseline is an ordinary least squares fit
//! in log-log space over the evaluation grid.

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::models::zipf::unit_types;
use crate::models::{hapax_fraction_model, log_model_types, series_model, LogModelParams};
use crate::sampling::{sample_ttr_curve, TrialConfig, TtrCurve};

/// Fitted optimum sample: the corpus is `scale` times larger than the sample
/// at which it would follow a perfect Zipf distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimumSample {
    /// `z`
    pub scale: f64,
    /// `M_z = M / z`
    pub optimum_tokens: f64,
    /// `N_z = N (z - 1) / (z ln z)`
    pub optimum_types: f64,
}

impl OptimumSample {
    pub fn params(&self) -> LogModelParams {
        LogModelParams {
            optimum_tokens: self.optimum_tokens,
            optimum_types: self.optimum_types,
        }
    }
}

/// Heaps' law `N = K M^beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeapsParams {
    pub k: f64,
    pub beta: f64,
}

impl HeapsParams {
    pub fn predict(&self, m: f64) -> f64 {
        if m <= 0.0 {
            return 0.0;
        }
        self.k * m.powf(self.beta)
    }
}

/// Fit quality of the three growth models on one corpus. RMSE values are
/// fractions of the corpus's observed type count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub title: String,
    pub optimum_tokens: f64,
    pub optimum_types: f64,
    pub rmse_heaps: f64,
    pub rmse_series: f64,
    pub rmse_model: f64,
    pub scale: f64,
    pub heaps: HeapsParams,
}

// Beyond these the inverse scale leaves the f64 range.
const SCALE_FLOOR: f64 = 1e-300;
const SCALE_CEILING: f64 = 1e300;

/// Solve `H(z) = h` for `z` by bisection; `H` is strictly decreasing so the
/// root is unique.
pub fn invert_hapax_fraction(h: f64) -> Result<f64> {
    if !(h > 0.0 && h < 1.0) {
        return Err(Error::OutOfRange {
            what: "hapax proportion",
            value: h,
            range: "(0, 1)",
        });
    }
    let hf = |z: f64| hapax_fraction_model(z).expect("bracket stays positive");

    let mut lo = 1e-6;
    while hf(lo) < h {
        lo *= 1e-6;
        if lo < SCALE_FLOOR {
            return Err(Error::Fit("hapax proportion too close to 1 to invert"));
        }
    }
    let mut hi = 1.0;
    while hf(hi) > h {
        hi *= 2.0;
        if hi > SCALE_CEILING {
            return Err(Error::Fit("hapax proportion too close to 0 to invert"));
        }
    }

    // Bisect on ln z so tiny and huge scales converge equally fast.
    let (mut a, mut b) = (lo.ln(), hi.ln());
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid == a || mid == b {
            break;
        }
        if hf(mid.exp()) > h {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok((0.5 * (a + b)).exp())
}

/// Fit `(M_z, N_z)` from token count, type count, and hapax count.
pub fn fit_from_statistics(tokens: u64, types: u64, hapaxes: u64) -> Result<OptimumSample> {
    if types == 0 || tokens == 0 {
        return Err(Error::Fit("empty corpus"));
    }
    if hapaxes == 0 {
        return Err(Error::Fit("hapax proportion is 0 (no type occurs exactly once)"));
    }
    if hapaxes >= types {
        return Err(Error::Fit("hapax proportion is 1 (every type occurs exactly once)"));
    }
    let h = hapaxes as f64 / types as f64;
    let scale = invert_hapax_fraction(h)?;
    Ok(OptimumSample {
        scale,
        optimum_tokens: tokens as f64 / scale,
        optimum_types: types as f64 / unit_types(scale),
    })
}

pub fn fit_optimum_sample(corpus: &Corpus) -> Result<OptimumSample> {
    let k = corpus.k_vector();
    fit_from_statistics(k.token_count(), k.type_count(), k.hapaxes())
}

/// Least squares line through `(ln m, ln types)` for points with both positive.
pub fn fit_heaps_points(points: &[(f64, f64)]) -> Result<HeapsParams> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(m, t)| *m > 0.0 && *t > 0.0)
        .map(|(m, t)| (m.ln(), t.ln()))
        .collect();
    let distinct_m = {
        let mut xs: Vec<f64> = logs.iter().map(|p| p.0).collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs.len()
    };
    if distinct_m < 2 {
        return Err(Error::InsufficientPoints {
            needed: 2,
            got: distinct_m,
        });
    }
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxy, sxx) = logs.iter().fold((0.0, 0.0), |(sxy, sxx), &(x, y)| {
        let dx = x - mean_x;
        (sxy + dx * (y - mean_y), sxx + dx * dx)
    });
    let beta = sxy / sxx;
    Ok(HeapsParams {
        k: (mean_y - beta * mean_x).exp(),
        beta,
    })
}

pub fn fit_heaps(curve: &TtrCurve) -> Result<HeapsParams> {
    let points: Vec<(f64, f64)> = curve
        .points
        .iter()
        .map(|p| (p.m as f64, p.types_mean))
        .collect();
    fit_heaps_points(&points)
}

/// Streaming root-mean-square error.
#[derive(Debug, Clone, Copy, Default)]
pub struct RmseAccumulator {
    count: usize,
    sum_sq: f64,
}

impl RmseAccumulator {
    pub fn push(&mut self, observed: f64, predicted: f64) {
        let d = observed - predicted;
        self.count += 1;
        self.sum_sq += d * d;
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn rmse(&self) -> f64 {
        if self.count == 0 {
            return 0.0;
        }
        (self.sum_sq / self.count as f64).sqrt()
    }
}

/// `sqrt(mean((obs - pred)^2)) / N`.
pub fn rmse_percent(observed: &[f64], predicted: &[f64], types: f64) -> Result<f64> {
    if observed.len() != predicted.len() {
        return Err(Error::LengthMismatch {
            left: observed.len(),
            right: predicted.len(),
        });
    }
    if observed.is_empty() {
        return Err(Error::InsufficientPoints { needed: 1, got: 0 });
    }
    if types.is_nan() || types <= 0.0 {
        return Err(Error::InvalidParameter("normalizing type count must be positive"));
    }
    let mut acc = RmseAccumulator::default();
    for (&o, &p) in observed.iter().zip(predicted) {
        acc.push(o, p);
    }
    Ok(acc.rmse() / types)
}

/// Predictions of the three models at each size of an observed curve.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPredictions {
    pub heaps: Vec<f64>,
    pub series: Vec<f64>,
    pub model: Vec<f64>,
}

pub fn predict_models(
    corpus: &Corpus,
    curve: &TtrCurve,
    fit: &OptimumSample,
    heaps: &HeapsParams,
) -> Result<ModelPredictions> {
    let kvec = corpus.k_vector();
    let total = kvec.token_count();
    let params = fit.params();
    let mut out = ModelPredictions {
        heaps: Vec::with_capacity(curve.points.len()),
        series: Vec::with_capacity(curve.points.len()),
        model: Vec::with_capacity(curve.points.len()),
    };
    for p in &curve.points {
        let m = p.m as f64;
        out.heaps.push(heaps.predict(m));
        out.series.push(series_model(&kvec, total, m)?);
        out.model.push(if p.m == 0 { 0.0 } else { log_model_types(&params, m)? });
    }
    Ok(out)
}

/// Sample the observed curve on `grid`, then score Heaps, the series model,
/// and the fitted logarithmic model against it.
pub fn compare_models(
    title: &str,
    corpus: &Corpus,
    grid: &[usize],
    config: &TrialConfig,
) -> Result<FitReport> {
    let fit = fit_optimum_sample(corpus)?;
    let curve = sample_ttr_curve(corpus, grid, config)?;
    let heaps = fit_heaps(&curve)?;
    let predictions = predict_models(corpus, &curve, &fit, &heaps)?;
    let observed = curve.types_means();
    let types = corpus.type_count() as f64;
    Ok(FitReport {
        title: title.to_owned(),
        optimum_tokens: fit.optimum_tokens,
        optimum_types: fit.optimum_types,
        rmse_heaps: rmse_percent(&observed, &predictions.heaps, types)?,
        rmse_series: rmse_percent(&observed, &predictions.series, types)?,
        rmse_model: rmse_percent(&observed, &predictions.model, types)?,
        scale: fit.scale,
        heaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::{default_grid, DeckSpec};
    use proptest::prelude::*;

    #[test]
    fn inverts_reference_points() {
        assert!((invert_hapax_fraction(0.3206).unwrap() - 10.41).abs() < 0.01);
        assert!((invert_hapax_fraction(0.5).unwrap() - 1.0).abs() < 1e-4);
        assert!((invert_hapax_fraction(0.5544).unwrap() - 0.5182).abs() < 0.001);
        for bad in [0.0, 1.0, -0.2, 1.3, f64::NAN] {
            assert!(invert_hapax_fraction(bad).is_err());
        }
    }

    #[test]
    fn extreme_proportions() {
        let z = invert_hapax_fraction(0.99).unwrap();
        assert!((hapax_fraction_model(z).unwrap() - 0.99).abs() < 1e-6);
        let z = invert_hapax_fraction(0.02).unwrap();
        assert!((hapax_fraction_model(z).unwrap() - 0.02).abs() < 1e-6);
        assert!(matches!(invert_hapax_fraction(0.99999), Err(Error::Fit(_))));
    }

    #[test]
    fn reported_optimum_samples() {
        let kjv = fit_from_statistics(1_010_654, 13_769, 4_414).unwrap();
        assert!((kjv.optimum_tokens / 97_084.0 - 1.0).abs() < 0.005);
        assert!((kjv.optimum_types / 5_312.0 - 1.0).abs() < 0.005);
        let blake = fit_from_statistics(8_354, 1_820, 1_009).unwrap();
        assert!((blake.optimum_tokens / 16_121.0 - 1.0).abs() < 0.005);
        assert!((blake.optimum_types / 2_574.0 - 1.0).abs() < 0.005);
        for (m, n, fit) in [(1_010_654.0, 13_769.0, kjv), (8_354.0, 1_820.0, blake)] {
            let e = log_model_types(&fit.params(), m).unwrap();
            assert!((e - n).abs() / n < 1e-9);
        }
    }

    #[test]
    fn degenerate_proportions_are_fit_errors() {
        let all_hapax = Corpus::from_tokens(["a", "b", "c"]);
        assert!(matches!(fit_optimum_sample(&all_hapax), Err(Error::Fit(_))));
        let no_hapax = Corpus::from_tokens(["a", "a", "b", "b"]);
        assert!(matches!(fit_optimum_sample(&no_hapax), Err(Error::Fit(_))));
        let empty = Corpus::from_tokens(Vec::<&str>::new());
        assert!(matches!(fit_optimum_sample(&empty), Err(Error::Fit(_))));
    }

    #[test]
    fn perfect_zipf_corpus_sits_at_its_optimum() {
        // 1000 types: 500 hapaxes, and the rest spread so that h = 1/2 exactly.
        let nz = 1000u64;
        let mut pairs = Vec::new();
        let mut assigned = 0;
        for n in 1..=40u64 {
            let count = nz / (n * (n + 1));
            for i in 0..count {
                pairs.push((format!("w{n}_{i}"), n));
            }
            assigned += count;
        }
        // the remaining mass goes to frequent types
        for i in 0..(nz - assigned) {
            pairs.push((format!("top{i}"), 100 + i));
        }
        let corpus = Corpus::from_type_counts(pairs);
        assert_eq!(corpus.type_count() as u64, nz);
        assert_eq!(corpus.hapax_proportion().unwrap(), 0.5);
        let fit = fit_optimum_sample(&corpus).unwrap();
        assert!((fit.scale - 1.0).abs() < 1e-9);
        assert!((fit.optimum_tokens - corpus.token_count() as f64).abs() < 1e-6);
        assert!((fit.optimum_types - nz as f64).abs() < 1e-6);
    }

    #[test]
    fn heaps_recovers_exact_power_law() {
        let points: Vec<(f64, f64)> = (1..=11)
            .map(|i| {
                let m = 1000.0 * i as f64;
                (m, 3.0 * m.powf(0.7))
            })
            .collect();
        let fit = fit_heaps_points(&points).unwrap();
        assert!((fit.k - 3.0).abs() < 1e-9);
        assert!((fit.beta - 0.7).abs() < 1e-9);
    }

    #[test]
    fn heaps_needs_two_points() {
        assert!(matches!(
            fit_heaps_points(&[(100.0, 20.0)]),
            Err(Error::InsufficientPoints { .. })
        ));
        assert!(fit_heaps_points(&[(0.0, 0.0), (100.0, 20.0)]).is_err());
        assert!(fit_heaps_points(&[(100.0, 20.0), (100.0, 21.0)]).is_err());
    }

    #[test]
    fn rmse_values() {
        assert_eq!(rmse_percent(&[1.0, 2.0], &[1.0, 2.0], 5.0).unwrap(), 0.0);
        let r = rmse_percent(&[10.0, 20.0], &[10.0, 22.0], 20.0).unwrap();
        assert!((r - 2f64.sqrt() / 20.0).abs() < 1e-15);
        assert!((r - 0.0707).abs() < 1e-4);
        assert!(matches!(
            rmse_percent(&[1.0], &[1.0, 2.0], 1.0),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(rmse_percent(&[], &[], 1.0).is_err());
        assert!(rmse_percent(&[1.0], &[2.0], 0.0).is_err());
    }

    #[test]
    fn deck_series_error_is_the_smoothing_gap() {
        // The series model reduces to the smooth deck formula here, so its RMSE
        // against the simulated curve is the RMSE of that formula against the
        // exact recursion, up to Monte Carlo noise.
        let spec = DeckSpec::new(4, 13).unwrap();
        let corpus = spec.to_corpus();
        let kvec = corpus.k_vector();
        let grid = default_grid(corpus.token_count(), 11).unwrap();
        let curve = sample_ttr_curve(&corpus, &grid, &TrialConfig::new(1000, 5)).unwrap();
        let exact_curve = crate::models::deck_types_recursive_curve(spec);
        let series: Vec<f64> = grid
            .iter()
            .map(|&m| series_model(&kvec, 52, m as f64).unwrap())
            .collect();
        let exact: Vec<f64> = grid.iter().map(|&m| exact_curve[m]).collect();
        let observed = curve.types_means();
        let against_exact = rmse_percent(&observed, &exact, 4.0).unwrap();
        let series_vs_exact = rmse_percent(&exact, &series, 4.0).unwrap();
        let series_vs_observed = rmse_percent(&observed, &series, 4.0).unwrap();
        assert!(against_exact < 0.005, "{against_exact}");
        assert!((series_vs_observed - series_vs_exact).abs() < 0.005);
    }

    #[test]
    fn model_predictions_start_at_zero() {
        let corpus = Corpus::from_tokens(["a", "a", "b", "c"]);
        let curve = sample_ttr_curve(&corpus, &[0, 2, 4], &TrialConfig::new(3, 1)).unwrap();
        let fit = fit_optimum_sample(&corpus).unwrap();
        let heaps = HeapsParams { k: 1.0, beta: 0.5 };
        let p = predict_models(&corpus, &curve, &fit, &heaps).unwrap();
        assert_eq!((p.heaps[0], p.series[0], p.model[0]), (0.0, 0.0, 0.0));
        assert!((p.model[2] - 3.0).abs() < 1e-9);
        assert!((p.series[2] - 3.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn inversion_round_trip(h in 0.05f64..0.95) {
            let z = invert_hapax_fraction(h).unwrap();
            prop_assert!((hapax_fraction_model(z).unwrap() - h).abs() <= 1e-6);
        }

        #[test]
        fn fitted_model_passes_through_corpus(
            tokens in 10u64..10_000_000,
            types_frac in 0.01f64..0.9,
            hapax_frac in 0.05f64..0.95,
        ) {
            let types = ((tokens as f64 * types_frac) as u64).max(2);
            let hapaxes = ((types as f64 * hapax_frac) as u64).clamp(1, types - 1);
            let fit = fit_from_statistics(tokens, types, hapaxes).unwrap();
            let e = log_model_types(&fit.params(), tokens as f64).unwrap();
            prop_assert!((e - types as f64).abs() / types as f64 <= 1e-3);
            prop_assert!((fit.optimum_tokens * fit.scale - tokens as f64).abs() <= 1e-6 * tokens as f64);
        }

        #[test]
        fn streaming_rmse_matches_batch(
            pairs in prop::collection::vec((-1e4f64..1e4, -1e4f64..1e4), 1..200),
        ) {
            let (obs, pred): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
            let batch = {
                let s: f64 = obs.iter().zip(&pred).map(|(o, p)| (o - p) * (o - p)).sum();
                (s / obs.len() as f64).sqrt() / 7.0
            };
            let streamed = rmse_percent(&obs, &pred, 7.0).unwrap();
            prop_assert!((batch - streamed).abs() <= 1e-12 * batch.max(1.0));
        }
    }
}

//! Seeded Monte Carlo subsampling without replacement.
//!
//! A sample of `m` tokens is a uniformly random subset of the token instances,
//! taken as the prefix of a random permutation (never a contiguous slice of the
//! text). Trial `t` draws from a ChaCha8 stream selected by `(seed, t)`, so
//! trials run in parallel and still aggregate to bit-identical results.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{check_range, Error, Result};

pub const DEFAULT_CORPUS_TRIALS: usize = 10;
pub const DEFAULT_DECK_TRIALS: usize = 1000;
pub const DEFAULT_GRID_POINTS: usize = 11;
pub const DEFAULT_LEGOMENA_CAP: usize = 5;

/// A uniform mini-corpus: `types` distinct words, each repeated `copies` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeckSpec {
    pub types: usize,
    pub copies: usize,
}

impl DeckSpec {
    pub fn new(types: usize, copies: usize) -> Result<Self> {
        if types == 0 || copies == 0 {
            return Err(Error::InvalidParameter("deck needs k >= 1 types and n >= 1 copies"));
        }
        Ok(Self { types, copies })
    }

    pub fn total_tokens(&self) -> usize {
        self.types * self.copies
    }

    pub fn to_corpus(&self) -> Corpus {
        Corpus::from_type_counts((0..self.types).map(|t| (format!("t{t}"), self.copies as u64)))
    }
}

/// Trial count, seed, and how many legomena orders to track.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialConfig {
    pub trials: usize,
    pub seed: u64,
    pub legomena_cap: usize,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            trials: DEFAULT_CORPUS_TRIALS,
            seed: 0,
            legomena_cap: DEFAULT_LEGOMENA_CAP,
        }
    }
}

impl TrialConfig {
    pub fn new(trials: usize, seed: u64) -> Self {
        Self {
            trials,
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1"));
        }
        Ok(())
    }
}

/// Mean behaviour at one sample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub m: usize,
    pub types_mean: f64,
    /// Sample standard deviation across trials (0 for a single trial).
    pub types_sd: f64,
    /// Mean `k_1 ..= k_cap` of the sample; index 0 holds `k_1`.
    pub legomena_mean: Vec<f64>,
}

impl CurvePoint {
    pub fn types_se(&self, trials: usize) -> f64 {
        self.types_sd / (trials as f64).sqrt()
    }
}

/// Types and low-order legomena as a function of tokens sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TtrCurve {
    pub points: Vec<CurvePoint>,
    pub trials: usize,
    pub seed: u64,
    pub legomena_cap: usize,
}

impl TtrCurve {
    pub fn sizes(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.m).collect()
    }

    pub fn types_means(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.types_mean).collect()
    }
}

/// `points` sample sizes evenly spaced from `M/250` up to `M`.
pub fn default_grid(total_tokens: usize, points: usize) -> Result<Vec<usize>> {
    if points < 2 {
        return Err(Error::InvalidParameter("grid needs at least 2 points"));
    }
    let start = total_tokens / 250;
    let span = (total_tokens - start) as f64;
    Ok((0..points)
        .map(|i| start + (span * i as f64 / (points - 1) as f64).round() as usize)
        .collect())
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Per-trial observations at each requested size: `(types, k_1..=k_cap)`.
/// `sizes` must be sorted ascending.
fn run_trial(
    corpus: &Corpus,
    sizes: &[usize],
    cap: usize,
    seed: u64,
    trial: usize,
) -> Vec<(usize, Vec<u64>)> {
    let mut rng = trial_rng(seed, trial);
    let mut ids = corpus.token_ids().to_vec();
    let needed = sizes.last().copied().unwrap_or(0);
    let (drawn, _) = ids.partial_shuffle(&mut rng, needed);

    let mut tally = Tally::new(corpus.type_count(), cap);
    let mut out = Vec::with_capacity(sizes.len());
    let mut pending = sizes.iter().peekable();
    while pending.next_if_eq(&&0).is_some() {
        out.push(tally.snapshot());
    }
    for (taken, &id) in drawn.iter().enumerate() {
        tally.draw(id);
        while pending.next_if_eq(&&(taken + 1)).is_some() {
            out.push(tally.snapshot());
        }
    }
    out
}

/// Running per-type counts of a sample and the low-order legomena they imply.
struct Tally {
    seen: Vec<u32>,
    /// `legomena[c]` = types drawn exactly `c` times, for `c <= cap`.
    legomena: Vec<u64>,
    types: usize,
}

impl Tally {
    fn new(type_count: usize, cap: usize) -> Self {
        Self {
            seen: vec![0; type_count],
            legomena: vec![0; cap + 1],
            types: 0,
        }
    }

    fn draw(&mut self, id: u32) {
        let cap = self.legomena.len() - 1;
        let c = &mut self.seen[id as usize];
        let before = *c as usize;
        *c += 1;
        if before == 0 {
            self.types += 1;
        } else if before <= cap {
            self.legomena[before] -= 1;
        }
        if before < cap {
            self.legomena[before + 1] += 1;
        }
    }

    fn snapshot(&self) -> (usize, Vec<u64>) {
        (self.types, self.legomena[1..].to_vec())
    }
}

/// Streaming mean and variance (Welford).
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, value: f64) {
        self.count += 1;
        let delta = value - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (value - self.mean);
    }

    fn sd(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).sqrt()
        }
    }
}

/// Mean types and legomena over `config.trials` random samples of each size.
///
/// Sizes are reported in ascending order. Any size above `M` is rejected.
pub fn sample_ttr_curve(corpus: &Corpus, sizes: &[usize], config: &TrialConfig) -> Result<TtrCurve> {
    config.validate()?;
    let total = corpus.token_count();
    if let Some(&bad) = sizes.iter().find(|&&m| m > total) {
        return Err(Error::OutOfRange {
            what: "sample size",
            value: bad as f64,
            range: "[0, M]",
        });
    }
    let mut sorted = sizes.to_vec();
    sorted.sort_unstable();
    let cap = config.legomena_cap;

    let per_trial: Vec<Vec<(usize, Vec<u64>)>> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(corpus, &sorted, cap, config.seed, t))
        .collect();

    let points = sorted
        .iter()
        .enumerate()
        .map(|(p, &m)| {
            let mut types = Moments::default();
            let mut legomena = vec![Moments::default(); cap];
            for trial in &per_trial {
                let (t, leg) = &trial[p];
                types.push(*t as f64);
                for (acc, &v) in legomena.iter_mut().zip(leg) {
                    acc.push(v as f64);
                }
            }
            CurvePoint {
                m,
                types_mean: types.mean,
                types_sd: types.sd(),
                legomena_mean: legomena.iter().map(|a| a.mean).collect(),
            }
        })
        .collect();

    Ok(TtrCurve {
        points,
        trials: config.trials,
        seed: config.seed,
        legomena_cap: cap,
    })
}

/// Shuffled-deck simulation over every `m = 0 ..= k*n`.
pub fn simulate_deck(spec: DeckSpec, config: &TrialConfig) -> Result<TtrCurve> {
    let corpus = spec.to_corpus();
    let sizes: Vec<usize> = (0..=spec.total_tokens()).collect();
    sample_ttr_curve(&corpus, &sizes, config)
}

/// Mean full legomena vector of random `floor(x * M)`-token samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegomenaSample {
    pub sample_size: usize,
    /// Entry 0 is `N` minus the types drawn.
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
    pub trials: usize,
}

impl LegomenaSample {
    pub fn standard_error(&self, n: usize) -> f64 {
        self.sd[n] / (self.trials as f64).sqrt()
    }
}

pub fn sample_legomena(corpus: &Corpus, x: f64, trials: usize, seed: u64) -> Result<LegomenaSample> {
    check_range("x", x, 0.0, 1.0, "[0, 1]")?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1"));
    }
    let total = corpus.token_count();
    let size = ((x * total as f64).floor() as usize).min(total);
    let len = corpus.top_frequency() as usize + 1;

    let per_trial: Vec<Vec<u64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let mut ids = corpus.token_ids().to_vec();
            let (drawn, _) = ids.partial_shuffle(&mut rng, size);
            let mut seen = vec![0usize; corpus.type_count()];
            for &id in drawn.iter() {
                seen[id as usize] += 1;
            }
            let mut k = vec![0u64; len];
            for c in seen {
                k[c] += 1;
            }
            k
        })
        .collect();

    let mut moments = vec![Moments::default(); len];
    for k in &per_trial {
        for (acc, &v) in moments.iter_mut().zip(k) {
            acc.push(v as f64);
        }
    }
    Ok(LegomenaSample {
        sample_size: size,
        mean: moments.iter().map(|a| a.mean).collect(),
        sd: moments.iter().map(Moments::sd).collect(),
        trials,
    })
}

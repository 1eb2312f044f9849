//! `legomena`: type/token statistics and vocabulary growth models for text corpora.
//!
//! The crate covers the whole pipeline from raw text to model comparison:
//!
//! - [`corpus`]: deterministic tokenization, frequency tables, and the legomena
//!   vector `k = (k_0, k_1, k_2, ...)` where `k_n` counts types seen exactly `n` times.
//! - [`sampling`]: seeded Monte Carlo subsampling without replacement, for corpora
//!   and for uniform "deck" mini-corpora.
//! - [`models`]: expected growth of types and n-legomena under subsampling. The
//!   deck recursion and its closed form, the finite-series corpus model, the
//!   binomial (Pascal triangle) transformation of the legomena vector, the
//!   perfect-Zipf legomena vector, and the logarithmic optimum-sample model.
//! - [`fitting`]: fitting the optimum sample `(M_z, N_z)` from the hapax proportion,
//!   fitting a Heaps' law baseline, and RMSE scoring.
//! - [`report`]: CSV/JSON encodings of every result type.
//!
//! ```
//! use legomena::corpus::{tokenize, Corpus, TokenizerMode};
//! use legomena::fitting::fit_optimum_sample;
//! use legomena::models::log_model_types;
//!
//! let tokens = tokenize("a b a c d e a b f g", TokenizerMode::Default);
//! let corpus = Corpus::from_tokens(tokens);
//! assert_eq!((corpus.token_count(), corpus.type_count()), (10, 7));
//!
//! let fit = fit_optimum_sample(&corpus).unwrap();
//! let at_m = log_model_types(&fit.params(), corpus.token_count() as f64).unwrap();
//! assert!((at_m - 7.0).abs() < 1e-6);
//! ```

#![forbid(unsafe_code)]

pub mod corpus;
pub mod error;
pub mod fitting;
pub mod models;
pub mod report;
pub mod sampling;

pub use corpus::{tokenize, Corpus, LegomenaVector, TokenizerMode};
pub use error::{Error, Result};
pub use fitting::{FitReport, HeapsParams, OptimumSample};
pub use models::{LogModelParams, PerfectZipf};
pub use sampling::{CurvePoint, DeckSpec, TtrCurve};

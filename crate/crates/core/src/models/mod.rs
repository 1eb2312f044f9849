//! Analytic expectations for types and n-legomena under subsampling.
//!
//! All functions here are pure. Three families live side by side:
//!
//! - [`deck`]: a uniform mini-corpus of `k` types with `n` copies each.
//! - [`series`]: the finite-series corpus model and the binomial transformation
//!   of a legomena vector.
//! - [`zipf`]: the perfect-Zipf legomena vector and the logarithmic model
//!   parametrized by an optimum sample `(M_z, N_z)`.

pub mod deck;
pub mod series;
pub mod zipf;

pub use deck::{deck_types_analytic, deck_types_recursive, deck_types_recursive_curve};
pub use series::{series_model, transform_kvector};
pub use zipf::{
    hapax_fraction_model, log_model_legomena, log_model_types, perfect_zipf_kvector,
    ranked_frequency, series_to_log_convergence, LogModelParams, PerfectZipf, MAX_CLOSED_FORM_ORDER,
};

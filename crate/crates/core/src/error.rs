use thiserror::Error;

/// Errors produced by corpus ingestion, models, and fitting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input is not valid UTF-8 at byte offset {offset}")]
    Ingest { offset: usize },

    #[error("statistic undefined: {0}")]
    UndefinedStatistic(&'static str),

    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("legomena vector inconsistent with token count: sum n*k_n = {weighted} but M = {tokens}")]
    InconsistentVector { weighted: f64, tokens: f64 },

    #[error("closed-form legomena are available for n <= 5 only (got n = {0}); use the binomial transformation of a perfect-Zipf vector for higher orders")]
    UnsupportedOrder(usize),

    #[error("cannot fit optimum sample: {0}")]
    Fit(&'static str),

    #[error("need at least {needed} usable points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("length mismatch: {left} observed vs {right} predicted")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_range(
    what: &'static str,
    value: f64,
    lo: f64,
    hi: f64,
    range: &'static str,
) -> Result<()> {
    if value.is_nan() || value < lo || value > hi {
        return Err(Error::OutOfRange { what, value, range });
    }
    Ok(())
}

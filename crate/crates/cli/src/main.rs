//! `legomena`: corpus statistics, vocabulary growth curves and model fits from
//! the command line. Every table is written as CSV or JSON.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use legomena::models::MAX_CLOSED_FORM_ORDER;
use legomena::TokenizerMode;

use crate::output::Format;

#[derive(Parser)]
#[command(name = "legomena", version, about = "Type/token and n-legomena statistics of text corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Token and type counts, legomena head, hapax proportion, top frequency.
    Stats {
        input: PathBuf,
        /// Also write the `{"M", "N", "k"}` snapshot as JSON to this path.
        #[arg(long, value_name = "PATH")]
        snapshot: Option<PathBuf>,
        /// Also write the `type,count` frequency table to this path.
        #[arg(long, value_name = "PATH")]
        freq: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Observed against predicted types and hapaxes over a grid of sample sizes.
    Ttr {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Fit the optimum sample (z, M_z, N_z) from the hapax proportion.
    Fit {
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Predicted types and legomena at chosen sample sizes, without sampling.
    Predict {
        input: PathBuf,
        /// Sample sizes to predict at; defaults to the grid.
        #[arg(long = "at", value_name = "M", value_delimiter = ',')]
        sizes: Vec<u64>,
        /// Grid size used when no sizes are given.
        #[arg(long, default_value_t = 11, value_parser = parse_points)]
        points: usize,
        #[command(flatten)]
        common: Common,
    },
    /// RMSE of Heaps' law, the series model and the log model, one row per file.
    Compare {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Simulated against exact and smooth type curves of a uniform deck.
    Deck {
        /// Number of distinct types `k`.
        #[arg(long = "types", short = 'k', value_parser = clap::value_parser!(u64).range(1..))]
        types: u64,
        /// Copies of each type `n`.
        #[arg(long = "copies", short = 'n', value_parser = clap::value_parser!(u64).range(1..))]
        copies: u64,
        /// Trials per sample size [default: 1000].
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        trials: Option<u64>,
        #[arg(long, env = "LEGOMENA_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Perfect-Zipf legomena proportions or ranked frequencies for a given N_z.
    Zipf {
        /// Optimum-sample type count.
        #[arg(long = "nz", value_parser = parse_optimum_types)]
        optimum_types: f64,
        #[arg(long, value_enum, default_value_t = ZipfTable::Legomena)]
        table: ZipfTable,
        /// Number of ranks in the ranked-frequency table.
        #[arg(long, default_value_t = 10)]
        ranks: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ZipfTable {
    /// `n,k_n,proportion` for n = 1..=cap
    Legomena,
    /// `r,f_r` with f_r = floor(N_z / r)
    Ranks,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Tokenizer::Default)]
    tokenizer: Tokenizer,
    /// Highest legomena order reported (1 to 5).
    #[arg(long, default_value_t = 5, value_parser = parse_legomena_cap)]
    legomena: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Sampling {
    /// Grid size: sample sizes evenly spaced from M/250 to M.
    #[arg(long, default_value_t = 11, value_parser = parse_points)]
    points: usize,
    /// Random subsamples per grid point.
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    #[arg(long, env = "LEGOMENA_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tokenizer {
    /// Lowercase, split on anything not alphanumeric.
    Default,
    /// Split on whitespace only.
    Whitespace,
    /// Runs of word characters and runs of punctuation, case kept.
    Wordpunct,
}

impl From<Tokenizer> for TokenizerMode {
    fn from(t: Tokenizer) -> Self {
        match t {
            Tokenizer::Default => TokenizerMode::Default,
            Tokenizer::Whitespace => TokenizerMode::Whitespace,
            Tokenizer::Wordpunct => TokenizerMode::WordPunct,
        }
    }
}

fn parse_legomena_cap(s: &str) -> Result<usize, String> {
    let cap: usize = s.parse().map_err(|e| format!("{e}"))?;
    if cap == 0 {
        return Err("the legomena cap must be at least 1".into());
    }
    if cap > MAX_CLOSED_FORM_ORDER {
        return Err(format!(
            "closed-form legomena predictions stop at order {MAX_CLOSED_FORM_ORDER}; \
             higher orders need the numeric transform (legomena::models::transform_kvector)"
        ));
    }
    Ok(cap)
}

fn parse_points(s: &str) -> Result<usize, String> {
    let points: usize = s.parse().map_err(|e| format!("{e}"))?;
    if points < 2 {
        return Err("a grid needs at least 2 points".into());
    }
    Ok(points)
}

fn parse_optimum_types(s: &str) -> Result<f64, String> {
    let nz: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(nz >= 1.0 && nz.is_finite()) {
        return Err("N_z must be a finite number >= 1".into());
    }
    Ok(nz)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("legomena: {err}");
            ExitCode::from(2)
        }
    }
}

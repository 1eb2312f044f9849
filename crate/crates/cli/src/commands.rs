use std::path::Path;
use std::process::ExitCode;

use legomena::corpus::tokenize_bytes;
use legomena::fitting::{compare_models, fit_optimum_sample};
use legomena::models::{
    deck_types_analytic, deck_types_recursive_curve, log_model_legomena, log_model_types,
    perfect_zipf_kvector, ranked_frequency, series_model,
};
use legomena::report::{
    reports_json, write_frequency_csv, write_reports_csv, CorpusSnapshot, DeckRow, TtrTableRow,
    ZipfLegomenaRow, ZipfRankRow,
};
use legomena::sampling::{
    default_grid, sample_ttr_curve, simulate_deck, TrialConfig, DEFAULT_DECK_TRIALS,
};
use legomena::{Corpus, FitReport, TokenizerMode};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::output::{self, Format, Table};
use crate::{Command, Common, Sampling, ZipfTable};

type Outcome = Result<ExitCode, String>;

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Stats {
            input,
            snapshot,
            freq,
            common,
        } => stats(&input, snapshot.as_deref(), freq.as_deref(), &common),
        Command::Ttr {
            input,
            common,
            sampling,
        } => ttr(&input, &common, &sampling),
        Command::Fit { input, common } => fit(&input, &common),
        Command::Predict {
            input,
            sizes,
            points,
            common,
        } => predict(&input, &sizes, points, &common),
        Command::Compare {
            inputs,
            common,
            sampling,
        } => compare(&inputs, &common, &sampling),
        Command::Deck {
            types,
            copies,
            trials,
            seed,
            format,
            out,
        } => {
            let trials = trials.map_or(DEFAULT_DECK_TRIALS, |t| t as usize);
            deck(types as usize, copies as usize, trials, seed, format, out.as_deref())
        }
        Command::Zipf {
            optimum_types,
            table,
            ranks,
            common,
        } => zipf(optimum_types, table, ranks, &common),
    }
}

fn load(path: &Path, mode: TokenizerMode) -> Result<Corpus, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let tokens = tokenize_bytes(&bytes, mode).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(Corpus::from_tokens(tokens))
}

fn with_path<T>(path: &Path, r: legomena::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("{}: {e}", path.display()))
}

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn finish(bytes: Vec<u8>, common: &Common) -> Outcome {
    output::emit(common.out.as_deref(), &bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn trial_config(sampling: &Sampling, common: &Common) -> TrialConfig {
    TrialConfig {
        trials: sampling.trials as usize,
        seed: sampling.seed,
        legomena_cap: common.legomena,
    }
}

fn stats(input: &Path, snapshot: Option<&Path>, freq: Option<&Path>, common: &Common) -> Outcome {
    let corpus = load(input, common.tokenizer.into())?;
    let k = corpus.k_vector();
    let mut header: Vec<String> = ["tokens", "types", "hapax_proportion", "top_frequency"]
        .map(String::from)
        .to_vec();
    header.extend((1..=common.legomena).map(|n| format!("k{n}")));
    let mut row = vec![
        Value::from(corpus.token_count()),
        Value::from(corpus.type_count()),
        corpus.hapax_proportion().map_or(Value::Null, num),
        Value::from(corpus.top_frequency()),
    ];
    row.extend((1..=common.legomena).map(|n| Value::from(k.get(n))));
    let mut table = Table::new(header);
    table.rows.push(row);

    if let Some(path) = snapshot {
        let mut json = with_path(path, CorpusSnapshot::of(&corpus).to_json())?;
        json.push('\n');
        output::emit(Some(path), json.as_bytes())?;
    }
    if let Some(path) = freq {
        let mut buf = Vec::new();
        with_path(path, write_frequency_csv(&corpus, &mut buf))?;
        output::emit(Some(path), &buf)?;
    }
    finish(table.render(common.format)?, common)
}

fn ttr(input: &Path, common: &Common, sampling: &Sampling) -> Outcome {
    let corpus = load(input, common.tokenizer.into())?;
    let fit = with_path(input, fit_optimum_sample(&corpus))?;
    let params = fit.params();
    let grid = with_path(input, default_grid(corpus.token_count(), sampling.points))?;
    let curve = with_path(
        input,
        sample_ttr_curve(&corpus, &grid, &trial_config(sampling, common)),
    )?;
    let mut rows = Vec::with_capacity(curve.points.len());
    for p in &curve.points {
        let (types_pred, hapax_pred) = if p.m == 0 {
            (0.0, 0.0)
        } else {
            let m = p.m as f64;
            (
                with_path(input, log_model_types(&params, m))?,
                with_path(input, log_model_legomena(&params, 1, m))?,
            )
        };
        rows.push(TtrTableRow {
            m: p.m,
            types_obs: p.types_mean,
            hapax_obs: p.legomena_mean[0],
            types_pred,
            hapax_pred,
        });
    }
    finish(output::rows(&rows, common.format)?, common)
}

#[derive(Serialize)]
struct FitRow {
    title: String,
    tokens: usize,
    types: usize,
    hapax_proportion: f64,
    z: f64,
    #[serde(rename = "Mz")]
    optimum_tokens: f64,
    #[serde(rename = "Nz")]
    optimum_types: f64,
}

fn fit(input: &Path, common: &Common) -> Outcome {
    let corpus = load(input, common.tokenizer.into())?;
    let fit = with_path(input, fit_optimum_sample(&corpus))?;
    let row = FitRow {
        title: input.display().to_string(),
        tokens: corpus.token_count(),
        types: corpus.type_count(),
        hapax_proportion: with_path(input, corpus.hapax_proportion())?,
        z: fit.scale,
        optimum_tokens: fit.optimum_tokens,
        optimum_types: fit.optimum_types,
    };
    finish(output::rows(&[row], common.format)?, common)
}

fn predict(input: &Path, sizes: &[u64], points: usize, common: &Common) -> Outcome {
    let corpus = load(input, common.tokenizer.into())?;
    let fit = with_path(input, fit_optimum_sample(&corpus))?;
    let params = fit.params();
    let k = corpus.k_vector();
    let total = corpus.token_count() as u64;
    let sizes: Vec<u64> = if sizes.is_empty() {
        with_path(input, default_grid(corpus.token_count(), points))?
            .into_iter()
            .map(|m| m as u64)
            .collect()
    } else {
        sizes.to_vec()
    };

    let mut header: Vec<String> = ["m", "types_series", "types_model"].map(String::from).to_vec();
    header.extend((1..=common.legomena).map(|n| format!("k{n}_model")));
    let mut table = Table::new(header);
    for m in sizes {
        let x = m as f64;
        // the series model only interpolates inside the corpus
        let series = if m <= total {
            num(with_path(input, series_model(&k, total, x))?)
        } else {
            Value::Null
        };
        let mut row = vec![Value::from(m), series];
        if m == 0 {
            row.extend(std::iter::repeat_n(num(0.0), common.legomena + 1));
        } else {
            row.push(num(with_path(input, log_model_types(&params, x))?));
            for n in 1..=common.legomena {
                row.push(num(with_path(input, log_model_legomena(&params, n, x))?));
            }
        }
        table.rows.push(row);
    }
    finish(table.render(common.format)?, common)
}

fn compare_one(path: &Path, common: &Common, sampling: &Sampling) -> Result<FitReport, String> {
    let corpus = load(path, common.tokenizer.into())?;
    let grid = with_path(path, default_grid(corpus.token_count(), sampling.points))?;
    with_path(
        path,
        compare_models(
            &path.display().to_string(),
            &corpus,
            &grid,
            &trial_config(sampling, common),
        ),
    )
}

fn compare(inputs: &[std::path::PathBuf], common: &Common, sampling: &Sampling) -> Outcome {
    let results: Vec<Result<FitReport, String>> = inputs
        .par_iter()
        .map(|path| compare_one(path, common, sampling))
        .collect();
    let mut reports = Vec::with_capacity(results.len());
    let mut failures = 0;
    for result in results {
        match result {
            Ok(report) => reports.push(report),
            Err(err) => {
                eprintln!("legomena: {err}");
                failures += 1;
            }
        }
    }
    let bytes = match common.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_reports_csv(&reports, &mut buf).map_err(|e| e.to_string())?;
            buf
        }
        Format::Json => {
            let mut json = reports_json(&reports).map_err(|e| e.to_string())?;
            json.push('\n');
            json.into_bytes()
        }
    };
    output::emit(common.out.as_deref(), &bytes)?;
    Ok(match failures {
        0 => ExitCode::SUCCESS,
        f if f == inputs.len() => ExitCode::from(2),
        _ => ExitCode::from(1),
    })
}

fn deck(types: usize, copies: usize, trials: usize, seed: u64, format: Format, out: Option<&Path>) -> Outcome {
    let spec = legomena::DeckSpec::new(types, copies).map_err(|e| e.to_string())?;
    let curve = simulate_deck(spec, &TrialConfig::new(trials, seed)).map_err(|e| e.to_string())?;
    let exact = deck_types_recursive_curve(spec);
    let mut rows = Vec::with_capacity(curve.points.len());
    for p in &curve.points {
        rows.push(DeckRow {
            m: p.m,
            empirical_mean: p.types_mean,
            empirical_sd: p.types_sd,
            recursive: exact[p.m],
            analytic: deck_types_analytic(spec, p.m as f64).map_err(|e| e.to_string())?,
        });
    }
    output::emit(out, &output::rows(&rows, format)?)?;
    Ok(ExitCode::SUCCESS)
}

fn zipf(optimum_types: f64, table: ZipfTable, ranks: u64, common: &Common) -> Outcome {
    let bytes = match table {
        ZipfTable::Legomena => {
            let k = perfect_zipf_kvector(optimum_types, common.legomena).map_err(|e| e.to_string())?;
            let rows: Vec<ZipfLegomenaRow> = k
                .iter()
                .enumerate()
                .skip(1)
                .map(|(n, &k_n)| ZipfLegomenaRow {
                    n,
                    k_n,
                    proportion: k_n / optimum_types,
                })
                .collect();
            output::rows(&rows, common.format)?
        }
        ZipfTable::Ranks => {
            let rows: Vec<ZipfRankRow> = (1..=ranks)
                .map(|r| ZipfRankRow {
                    r,
                    f_r: ranked_frequency(optimum_types, r),
                })
                .collect();
            output::rows(&rows, common.format)?
        }
    };
    finish(bytes, common)
}

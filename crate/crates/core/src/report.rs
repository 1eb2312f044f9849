//! CSV and JSON encodings.
//!
//! Floats are written with Rust's shortest round-trip formatting, so every
//! table parses back to the same values. Row order is always deterministic.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::fitting::FitReport;
use crate::sampling::{CurvePoint, TtrCurve};

/// Whole-corpus snapshot: `{"M": .., "N": .., "k": [k_0, ..., k_max]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSnapshot {
    #[serde(rename = "M")]
    pub tokens: u64,
    #[serde(rename = "N")]
    pub types: u64,
    pub k: Vec<u64>,
}

impl CorpusSnapshot {
    pub fn of(corpus: &Corpus) -> Self {
        let k = corpus.k_vector();
        Self {
            tokens: corpus.token_count() as u64,
            types: corpus.type_count() as u64,
            k: k.counts().to_vec(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// `type,count`, most frequent first, ties in lexicographic order.
pub fn write_frequency_csv<W: Write>(corpus: &Corpus, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["type", "count"])?;
    for (ty, count) in corpus.ranked_frequencies() {
        w.write_record([ty, &count.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_frequency_csv<R: Read>(input: R) -> Result<Vec<(String, u64)>> {
    let mut r = csv::Reader::from_reader(input);
    let mut rows = Vec::new();
    for rec in r.deserialize() {
        let (ty, count): (String, u64) = rec?;
        rows.push((ty, count));
    }
    Ok(rows)
}

fn curve_header(cap: usize) -> Vec<String> {
    let mut header = vec!["m".to_owned(), "types_mean".to_owned(), "types_sd".to_owned()];
    header.extend((1..=cap).map(|n| format!("k{n}_mean")));
    header
}

/// `m,types_mean,types_sd,k1_mean,...,kJ_mean`.
pub fn write_curve_csv<W: Write>(curve: &TtrCurve, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(curve_header(curve.legomena_cap))?;
    for p in &curve.points {
        let mut row = vec![p.m.to_string(), p.types_mean.to_string(), p.types_sd.to_string()];
        row.extend(p.legomena_mean.iter().map(f64::to_string));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// Parse a curve written by [`write_curve_csv`]. Trials and seed are not part
/// of the table and must be supplied.
pub fn read_curve_csv<R: Read>(input: R, trials: usize, seed: u64) -> Result<TtrCurve> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    if header.len() < 3 {
        return Err(Error::InvalidParameter("curve CSV needs m,types_mean,types_sd columns"));
    }
    let cap = header.len() - 3;
    if header.iter().collect::<Vec<_>>() != curve_header(cap) {
        return Err(Error::InvalidParameter("unexpected curve CSV header"));
    }
    let mut points = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        let num = |i: usize| -> Result<f64> {
            rec[i]
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter("non-numeric curve CSV field"))
        };
        points.push(CurvePoint {
            m: rec[0]
                .parse()
                .map_err(|_| Error::InvalidParameter("non-integer sample size"))?,
            types_mean: num(1)?,
            types_sd: num(2)?,
            legomena_mean: (3..3 + cap).map(num).collect::<Result<_>>()?,
        });
    }
    Ok(TtrCurve {
        points,
        trials,
        seed,
        legomena_cap: cap,
    })
}

/// One row of the model comparison table; errors are in percent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReportRow {
    pub title: String,
    #[serde(rename = "Mz")]
    pub optimum_tokens: f64,
    #[serde(rename = "Nz")]
    pub optimum_types: f64,
    pub heaps_pct: f64,
    pub series_pct: f64,
    pub model_pct: f64,
}

impl From<&FitReport> for FitReportRow {
    fn from(r: &FitReport) -> Self {
        Self {
            title: r.title.clone(),
            optimum_tokens: r.optimum_tokens,
            optimum_types: r.optimum_types,
            heaps_pct: 100.0 * r.rmse_heaps,
            series_pct: 100.0 * r.rmse_series,
            model_pct: 100.0 * r.rmse_model,
        }
    }
}

/// `title,Mz,Nz,heaps_pct,series_pct,model_pct`, one row per report.
pub fn write_reports_csv<W: Write>(reports: &[FitReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        w.serialize(FitReportRow::from(r))?;
    }
    if reports.is_empty() {
        w.write_record(["title", "Mz", "Nz", "heaps_pct", "series_pct", "model_pct"])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_reports_csv<R: Read>(input: R) -> Result<Vec<FitReportRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize()
        .map(|rec| rec.map_err(Error::from))
        .collect()
}

pub fn reports_json(reports: &[FitReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(reports)?)
}

/// Observed against predicted types and hapaxes at one sample size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TtrTableRow {
    pub m: usize,
    pub types_obs: f64,
    pub hapax_obs: f64,
    pub types_pred: f64,
    pub hapax_pred: f64,
}

/// Expected-types curve of a deck, simulated and analytic.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeckRow {
    pub m: usize,
    pub empirical_mean: f64,
    pub empirical_sd: f64,
    pub recursive: f64,
    pub analytic: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZipfLegomenaRow {
    pub n: usize,
    pub k_n: f64,
    pub proportion: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZipfRankRow {
    pub r: u64,
    pub f_r: u64,
}

/// Serialize homogeneous rows with a header taken from the field names.
pub fn write_rows_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows_csv<T: for<'de> Deserialize<'de>, R: Read>(input: R) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize()
        .map(|rec| rec.map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fitting::HeapsParams;
    use crate::sampling::{sample_ttr_curve, TrialConfig};
    use proptest::prelude::*;

    #[test]
    fn snapshot_json_shape() {
        let c = Corpus::from_tokens(["the", "cat", "the", "cat", "sat"]);
        assert_eq!(
            CorpusSnapshot::of(&c).to_json().unwrap(),
            r#"{"M":5,"N":3,"k":[0,1,2]}"#
        );
    }

    #[test]
    fn frequency_table_order() {
        let c = Corpus::from_tokens(["b", "a", "c", "c", "b", "a", "c", "z,q"]);
        let mut buf = Vec::new();
        write_frequency_csv(&c, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "type,count\nc,3\na,2\nb,2\n\"z,q\",1\n"
        );
        let rows = read_frequency_csv(buf.as_slice()).unwrap();
        assert_eq!(rows[3], ("z,q".to_owned(), 1));
    }

    #[test]
    fn curve_header_and_round_trip() {
        let c = Corpus::from_tokens("a b a c a d b e".split(' '));
        let curve = sample_ttr_curve(&c, &[0, 3, 8], &TrialConfig::new(4, 9)).unwrap();
        let mut buf = Vec::new();
        write_curve_csv(&curve, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("m,types_mean,types_sd,k1_mean,k2_mean,k3_mean,k4_mean,k5_mean\n"));
        let back = read_curve_csv(buf.as_slice(), 4, 9).unwrap();
        assert_eq!(back, curve);
    }

    #[test]
    fn report_row_schema() {
        let r = FitReport {
            title: "Poems, selected".into(),
            optimum_tokens: 16121.5,
            optimum_types: 2574.25,
            rmse_heaps: 0.0269,
            rmse_series: 0.0072,
            rmse_model: 0.0074,
            scale: 0.5,
            heaps: HeapsParams { k: 5.0, beta: 0.6 },
        };
        let mut buf = Vec::new();
        write_reports_csv(std::slice::from_ref(&r), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("title,Mz,Nz,heaps_pct,series_pct,model_pct\n\"Poems, selected\",16121.5,2574.25,"));
        let rows = read_reports_csv(buf.as_slice()).unwrap();
        assert_eq!(rows, vec![FitReportRow::from(&r)]);
        let json: Vec<FitReport> = serde_json::from_str(&reports_json(std::slice::from_ref(&r)).unwrap()).unwrap();
        assert_eq!(json, vec![r]);
    }

    #[test]
    fn empty_report_table_keeps_header() {
        let mut buf = Vec::new();
        write_reports_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "title,Mz,Nz,heaps_pct,series_pct,model_pct\n"
        );
    }

    proptest! {
        #[test]
        fn ttr_rows_round_trip(rows in prop::collection::vec(
            (0usize..1_000_000, any::<f64>(), any::<f64>(), any::<f64>(), any::<f64>()), 0..20)
        ) {
            let rows: Vec<TtrTableRow> = rows
                .into_iter()
                .filter(|r| r.1.is_finite() && r.2.is_finite() && r.3.is_finite() && r.4.is_finite())
                .map(|(m, a, b, c, d)| TtrTableRow { m, types_obs: a, hapax_obs: b, types_pred: c, hapax_pred: d })
                .collect();
            let mut buf = Vec::new();
            write_rows_csv(&rows, &mut buf).unwrap();
            let back: Vec<TtrTableRow> = read_rows_csv(buf.as_slice()).unwrap();
            prop_assert_eq!(back, rows);
        }
    }
}

use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// A table whose columns are only known at run time. Missing values are
/// empty in CSV and `null` in JSON.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, String> {
        match format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).map_err(|e| e.to_string())?;
                for row in &self.rows {
                    w.write_record(row.iter().map(cell)).map_err(|e| e.to_string())?;
                }
                w.into_inner().map_err(|e| e.to_string())
            }
            Format::Json => {
                let objects: Vec<Map<String, Value>> = self
                    .rows
                    .iter()
                    .map(|row| self.header.iter().cloned().zip(row.iter().cloned()).collect())
                    .collect();
                json(&objects)
            }
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>, String> {
    let mut bytes = serde_json::to_vec_pretty(value).map_err(|e| e.to_string())?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// Rows with a fixed schema, header taken from the field names.
pub fn rows<T: Serialize>(rows: &[T], format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            legomena::report::write_rows_csv(rows, &mut buf).map_err(|e| e.to_string())?;
            Ok(buf)
        }
        Format::Json => json(rows),
    }
}

pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(bytes).map_err(|e| e.to_string()),
    }
}

//! Tabular output in CSV or JSON.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Named columns and rows of JSON values. Objects are rendered in CSV as
/// `key=value` pairs joined by `;`.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

impl Metadata {
    pub fn new(command: &str, seed: u64, deterministic: bool) -> Self {
        let timestamp_unix = if deterministic {
            None
        } else {
            SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs())
        };
        Self {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            seed,
            timestamp_unix,
        }
    }
}

/// Finite numbers keep full precision; NaN and infinities become strings
/// so the JSON stays valid.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
    } else {
        Value::String(format!("{x}"))
    }
}

pub fn opt_num(x: Option<f64>) -> Value {
    x.map(num).unwrap_or(Value::Null)
}

pub fn named(names: &[String], values: &[f64]) -> Value {
    let mut m = Map::new();
    for (n, v) in names.iter().zip(values) {
        m.insert(n.clone(), num(*v));
    }
    Value::Object(m)
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| format!("{k}={}", csv_cell(v)))
            .collect::<Vec<_>>()
            .join(";"),
        Value::Array(a) => a.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
    }
}

pub fn render(table: &Table, meta: &Metadata, format: Format) -> std::io::Result<Vec<u8>> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(csv_cell))?;
            }
            w.flush()?;
            w.into_inner().map_err(|e| e.into_error())
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|r| {
                    Value::Object(
                        table
                            .columns
                            .iter()
                            .cloned()
                            .zip(r.iter().cloned())
                            .collect::<Map<_, _>>(),
                    )
                })
                .collect();
            let body = serde_json::json!({ "metadata": meta, "rows": rows });
            let mut out = serde_json::to_vec_pretty(&body)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

pub fn write_output(bytes: &[u8], path: Option<&std::path::Path>) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()
        }
    }
}

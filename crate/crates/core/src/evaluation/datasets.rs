use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::describe::{descriptive_stats, Descriptive};
use crate::error::{Error, Result};

const DATA1: &str = include_str!("../../data/data1_guinea_pigs.txt");
const DATA2: &str = include_str!("../../data/data2_relief_times.txt");

/// Published summaries each embedded dataset must reproduce:
/// n, min, mean, median, sd, skewness, kurtosis, q1, q3, max.
const CHECKSUM_TOLERANCE: f64 = 0.005;
const DATA1_SUMMARY: [f64; 10] = [72.0, 0.100, 1.851, 1.560, 1.200, 1.788, 4.157, 1.080, 2.303, 7.000];
const DATA2_SUMMARY: [f64; 10] = [20.0, 1.100, 1.900, 1.700, 0.704, 1.592, 2.346, 1.475, 2.050, 4.100];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DatasetId {
    Data1GuineaPigs,
    Data2ReliefTimes,
}

impl DatasetId {
    pub const ALL: [DatasetId; 2] = [Self::Data1GuineaPigs, Self::Data2ReliefTimes];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Data1GuineaPigs => "data1_guinea_pigs",
            Self::Data2ReliefTimes => "data2_relief_times",
        }
    }

    fn raw(&self) -> &'static str {
        match self {
            Self::Data1GuineaPigs => DATA1,
            Self::Data2ReliefTimes => DATA2,
        }
    }

    fn summary(&self) -> &'static [f64; 10] {
        match self {
            Self::Data1GuineaPigs => &DATA1_SUMMARY,
            Self::Data2ReliefTimes => &DATA2_SUMMARY,
        }
    }
}

impl fmt::Display for DatasetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DatasetId {
    type Err = Error;

    /// Accepts the full id or the short forms `data1` / `data2`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "data1" | "data1_guinea_pigs" => Ok(Self::Data1GuineaPigs),
            "data2" | "data2_relief_times" => Ok(Self::Data2ReliefTimes),
            _ => Err(Error::Dataset(format!("unknown builtin dataset '{s}' (known: data1, data2)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    pub id: String,
    pub values: Vec<f64>,
    pub source: String,
}

impl Dataset {
    /// Loads an embedded dataset after checking it against its published summary.
    pub fn builtin(id: DatasetId) -> Result<Self> {
        let ds = parse(id.name(), id.raw())?;
        verify_checksum(&descriptive_stats(&ds.values)?, id.summary())
            .map_err(|e| Error::Dataset(format!("{id}: {e}")))?;
        Ok(ds)
    }

    /// Reads a plain-text file: one value per line, `#` comments ignored.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        parse(&name, &text).map_err(|e| Error::Dataset(format!("{}: {e}", path.display())))
    }
}

fn parse(id: &str, text: &str) -> Result<Dataset> {
    let mut values = Vec::new();
    let mut source = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(c) = line.strip_prefix('#') {
            source.push(c.trim().to_string());
            continue;
        }
        if line.is_empty() {
            continue;
        }
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: f64 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: '{tok}' is not a number", lineno + 1)))?;
            if !v.is_finite() {
                return Err(Error::Parse(format!("line {}: non-finite value", lineno + 1)));
            }
            values.push(v);
        }
    }
    if values.is_empty() {
        return Err(Error::Dataset(format!("{id}: no observations")));
    }
    Ok(Dataset {
        id: id.to_string(),
        values,
        source: source.join(" "),
    })
}

fn verify_checksum(d: &Descriptive, expected: &[f64; 10]) -> std::result::Result<(), String> {
    let got = [
        d.n as f64,
        d.min,
        d.mean,
        d.median,
        d.sd,
        d.skewness.unwrap_or(f64::NAN),
        d.kurtosis.unwrap_or(f64::NAN),
        d.q1,
        d.q3,
        d.max,
    ];
    let labels = ["n", "min", "mean", "median", "sd", "skewness", "kurtosis", "q1", "q3", "max"];
    for ((g, e), l) in got.iter().zip(expected).zip(labels) {
        if !((g - e).abs() <= CHECKSUM_TOLERANCE) {
            return Err(format!("{l} is {g:.4}, expected {e}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_load() {
        let d1 = Dataset::builtin(DatasetId::Data1GuineaPigs).unwrap();
        let d2 = Dataset::builtin(DatasetId::Data2ReliefTimes).unwrap();
        assert_eq!(d1.values.len(), 72);
        assert_eq!(d2.values.len(), 20);
        assert!(d2.source.contains("Gross"));
    }

    #[test]
    fn checksum_catches_edits() {
        let mut d = parse("x", DATA2).unwrap();
        d.values[0] = 1.2;
        let s = descriptive_stats(&d.values).unwrap();
        assert!(verify_checksum(&s, &DATA2_SUMMARY).is_err());
    }

    #[test]
    fn parsing() {
        let d = parse("t", "# header\n1.5, 2\n\n3 4e-1\n").unwrap();
        assert_eq!(d.values, vec![1.5, 2.0, 3.0, 0.4]);
        assert_eq!(d.source, "header");
        assert!(parse("t", "1\nabc\n").unwrap_err().to_string().contains("line 2"));
        assert!(parse("t", "# only\n").is_err());
        assert_eq!("data1".parse::<DatasetId>().unwrap(), DatasetId::Data1GuineaPigs);
        assert!("data3".parse::<DatasetId>().is_err());
    }
}

//! File formats.
//!
//! Scenario CSV: a header `prob,asset_1,…,asset_n`, then one row per
//! scenario holding its probability and the return of every asset.
//!
//! Kernel CSV: `k` rows of `k` numbers, no header; entry `[x][p] = f(x, p)`.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::kernel::KernelInstance;
use crate::market::ScenarioMarket;

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path.display().to_string(), e))
}

fn csv_error(label: &str, err: csv::Error) -> Error {
    let line = err.position().map_or(0, |p| p.line());
    match err.kind() {
        csv::ErrorKind::Io(_) => {
            let message = err.to_string();
            Error::Io { path: label.to_string(), source: std::io::Error::other(message) }
        }
        csv::ErrorKind::UnequalLengths { expected_len, len, .. } => Error::Parse {
            path: label.to_string(),
            line,
            message: format!("row has {len} fields, expected {expected_len}"),
        },
        _ => Error::Parse { path: label.to_string(), line, message: err.to_string() },
    }
}

fn parse_field(label: &str, line: u64, field: &str) -> Result<f64> {
    field.trim().parse::<f64>().map_err(|_| Error::Parse {
        path: label.to_string(),
        line,
        message: format!("`{field}` is not a number"),
    })
}

pub fn parse_market_csv(reader: impl Read, label: &str) -> Result<ScenarioMarket> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(label, e))?.clone();
    if headers.get(0) != Some("prob") || headers.len() < 2 {
        return Err(Error::Parse {
            path: label.to_string(),
            line: 1,
            message: "header must be `prob,asset_1,…,asset_n`".into(),
        });
    }
    let n = headers.len() - 1;
    let mut probabilities = Vec::new();
    let mut returns = vec![Vec::new(); n];
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(label, e))?;
        let line = record.position().map_or(0, |p| p.line());
        probabilities.push(parse_field(label, line, &record[0])?);
        for (i, column) in returns.iter_mut().enumerate() {
            column.push(parse_field(label, line, &record[i + 1])?);
        }
    }
    ScenarioMarket::new(probabilities, returns)
}

pub fn read_market(path: &Path) -> Result<ScenarioMarket> {
    parse_market_csv(open(path)?, &path.display().to_string())
}

pub fn write_market_csv(market: &ScenarioMarket, mut out: impl Write) -> std::io::Result<()> {
    let header: Vec<String> =
        std::iter::once("prob".to_string()).chain((1..=market.asset_count()).map(|i| format!("asset_{i}"))).collect();
    writeln!(out, "{}", header.join(","))?;
    for (j, p) in market.probabilities().iter().enumerate() {
        let row: Vec<String> =
            std::iter::once(p.to_string()).chain(market.returns().iter().map(|r| r[j].to_string())).collect();
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

pub fn parse_kernel_csv(reader: impl Read, label: &str) -> Result<KernelInstance> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(reader);
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(label, e))?;
        let line = record.position().map_or(0, |p| p.line());
        rows.push(record.iter().map(|f| parse_field(label, line, f)).collect::<Result<Vec<_>>>()?);
    }
    KernelInstance::new(rows)
}

pub fn read_kernel(path: &Path) -> Result<KernelInstance> {
    parse_kernel_csv(open(path)?, &path.display().to_string())
}

/// `"0.5,0.5"` → `[0.5, 0.5]`.
pub fn parse_weights(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|w| {
            w.trim().parse::<f64>().map_err(|_| Error::Config(format!("`{w}` in weight list `{s}` is not a number")))
        })
        .collect()
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path.display().to_string(), e))
}

//! Trace persistence in CSV and JSON-lines form.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use fplab_core::{RunResult, TraceRecord};
use serde::{Deserialize, Serialize};
use tempfile::NamedTempFile;

use crate::error::HarnessError;

pub const CSV_HEADER: [&str; 10] = [
    "run_id",
    "algorithm",
    "operator",
    "iter",
    "queries",
    "residual",
    "lambda",
    "eps_k",
    "D_estimate",
    "phase",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceFormat {
    #[default]
    Csv,
    Jsonl,
}

impl TraceFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("jsonl") => TraceFormat::Jsonl,
            _ => TraceFormat::Csv,
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            TraceFormat::Csv => "csv",
            TraceFormat::Jsonl => "jsonl",
        }
    }
}

/// Identifies a run in every exported row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceMeta {
    pub run_id: String,
    pub algorithm: String,
    pub operator: String,
    pub seed: u64,
}

/// One exported trace row; field names match the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub run_id: String,
    pub algorithm: String,
    pub operator: String,
    pub iter: u64,
    pub queries: u64,
    pub residual: f64,
    pub lambda: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_k: Option<f64>,
    #[serde(rename = "D_estimate", default, skip_serializing_if = "Option::is_none")]
    pub d_estimate: Option<f64>,
    pub phase: u32,
}

impl TraceRow {
    pub fn new(meta: &TraceMeta, rec: &TraceRecord) -> Self {
        TraceRow {
            run_id: meta.run_id.clone(),
            algorithm: meta.algorithm.clone(),
            operator: meta.operator.clone(),
            iter: rec.global_iter,
            queries: rec.queries,
            residual: rec.residual,
            lambda: rec.lambda_current,
            eps_k: rec.eps_k,
            d_estimate: rec.d_estimate,
            phase: rec.phase,
        }
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

fn optional(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

fn csv_bytes(result: &RunResult, meta: &TraceMeta) -> Result<Vec<u8>, csv::Error> {
    let mut buf = format!("# fplab trace run_id={} seed={}\n", meta.run_id, meta.seed).into_bytes();
    {
        let mut w = csv::WriterBuilder::new().from_writer(&mut buf);
        w.write_record(CSV_HEADER)?;
        for rec in result.trace.iter() {
            w.write_record([
                meta.run_id.clone(),
                meta.algorithm.clone(),
                meta.operator.clone(),
                rec.global_iter.to_string(),
                rec.queries.to_string(),
                format_float(rec.residual),
                format_float(rec.lambda_current),
                optional(rec.eps_k),
                optional(rec.d_estimate),
                rec.phase.to_string(),
            ])?;
        }
        w.flush()?;
    }
    Ok(buf)
}

fn jsonl_bytes(result: &RunResult, meta: &TraceMeta) -> Result<Vec<u8>, serde_json::Error> {
    let mut buf = Vec::new();
    for rec in result.trace.iter() {
        serde_json::to_writer(&mut buf, &TraceRow::new(meta, rec))?;
        buf.push(b'\n');
    }
    Ok(buf)
}

/// Writes `contents` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), HarnessError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let tmp = NamedTempFile::new_in(dir).map_err(|e| HarnessError::io(dir, e))?;
    {
        let mut w = BufWriter::new(tmp.as_file());
        w.write_all(contents).map_err(|e| HarnessError::io(path, e))?;
        w.flush().map_err(|e| HarnessError::io(path, e))?;
    }
    tmp.persist(path).map_err(|e| HarnessError::io(path, e.error))?;
    Ok(())
}

pub fn export_trace(
    result: &RunResult,
    meta: &TraceMeta,
    path: &Path,
    format: TraceFormat,
) -> Result<(), HarnessError> {
    let bytes = match format {
        TraceFormat::Csv => csv_bytes(result, meta).map_err(|source| HarnessError::Csv {
            path: path.into(),
            source,
        })?,
        TraceFormat::Jsonl => jsonl_bytes(result, meta).map_err(|source| HarnessError::Json {
            path: path.into(),
            source,
        })?,
    };
    write_atomic(path, &bytes)
}

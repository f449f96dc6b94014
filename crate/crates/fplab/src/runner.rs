use std::fs;
use std::path::{Path, PathBuf};

use fplab_core::{CountedOperator, RealVector, RunResult};
use rayon::prelude::*;

use crate::config::{parse_config, RunConfig};
use crate::error::HarnessError;
use crate::export::{export_trace, format_float, write_atomic, TraceFormat, TraceMeta};
use crate::presets::{preset, Overrides};

#[derive(Debug, Clone)]
pub struct CellOutcome {
    pub meta: TraceMeta,
    pub result: RunResult,
    pub path: PathBuf,
}

/// Runs every cell of a preset, writing one trace per cell and a summary table.
pub fn run_preset(
    name: &str,
    out_dir: &Path,
    overrides: &Overrides,
    seed: u64,
) -> Result<Vec<CellOutcome>, HarnessError> {
    let preset = preset(name, overrides)?;
    fs::create_dir_all(out_dir).map_err(|e| HarnessError::io(out_dir, e))?;
    let outcomes = preset
        .cells
        .par_iter()
        .map(|cell| {
            let mut op = CountedOperator::new(cell.operator.clone());
            let result = cell.algorithm.run(&mut op, &cell.x0, &cell.solver)?;
            let meta = TraceMeta {
                run_id: cell.run_id.clone(),
                algorithm: cell.algorithm.to_string(),
                operator: cell.operator.label(),
                seed,
            };
            let path = out_dir.join(format!("{}.csv", cell.run_id));
            export_trace(&result, &meta, &path, TraceFormat::Csv)?;
            Ok(CellOutcome { meta, result, path })
        })
        .collect::<Result<Vec<_>, HarnessError>>()?;
    write_summary(&out_dir.join(format!("{name}_summary.csv")), &outcomes, seed)?;
    Ok(outcomes)
}

fn write_summary(path: &Path, outcomes: &[CellOutcome], seed: u64) -> Result<(), HarnessError> {
    let mut text = format!("# fplab summary seed={seed}\n");
    text.push_str("run_id,algorithm,operator,termination,total_queries,final_residual\n");
    for o in outcomes {
        text.push_str(&format!(
            "{},{},{},{},{},{}\n",
            o.meta.run_id,
            o.meta.algorithm,
            o.meta.operator,
            o.result.termination,
            o.result.total_queries,
            format_float(o.result.final_residual)
        ));
    }
    write_atomic(path, text.as_bytes())
}

/// Runs a configuration file. Relative output paths resolve against the
/// directory holding the file.
pub fn run_config(path: &Path, default_seed: u64) -> Result<(RunConfig, CellOutcome), HarnessError> {
    let text = fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    let cfg = parse_config(&text, default_seed)?;
    let x0 = RealVector::filled(cfg.operator.dim(), cfg.x0_fill)?;
    let mut op = CountedOperator::new(cfg.operator.clone());
    let result = cfg.algorithm.run(&mut op, &x0, &cfg.solver)?;
    let meta = TraceMeta {
        run_id: cfg.run_id.clone(),
        algorithm: cfg.algorithm.to_string(),
        operator: cfg.operator.label(),
        seed: cfg.seed,
    };
    let out = if cfg.output.is_absolute() {
        cfg.output.clone()
    } else {
        path.parent().unwrap_or(Path::new(".")).join(&cfg.output)
    };
    export_trace(&result, &meta, &out, cfg.format)?;
    Ok((cfg, CellOutcome { meta, result, path: out }))
}

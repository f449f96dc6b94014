//! Line-oriented run configuration.
//!
//! ```text
//! # comment
//! operator.name = rotation_hard
//! operator.d = 500
//! operator.gamma = 1
//! solver.name = adaghal
//! solver.eps = 1e-8
//! run.max_queries = 10000
//! run.output = fig1a_d500_g1_adaghal.csv
//! ```

use std::cell::Cell;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use fplab_core::{HaltMode, OperatorSpec, Parity, SolverConfig};

use crate::algorithm::Algorithm;
use crate::error::ConfigError;
use crate::export::TraceFormat;
use crate::operators::{projected_rotation_scale, rotation_slope};

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub operator: OperatorSpec,
    pub algorithm: Algorithm,
    pub solver: SolverConfig,
    /// Every coordinate of the starting point.
    pub x0_fill: f64,
    pub seed: u64,
    pub output: PathBuf,
    pub format: TraceFormat,
    pub run_id: String,
}

struct Entry {
    line: usize,
    value: String,
    used: Cell<bool>,
}

struct Section {
    name: &'static str,
    entries: BTreeMap<String, Entry>,
}

impl Section {
    fn new(name: &'static str) -> Self {
        Section {
            name,
            entries: BTreeMap::new(),
        }
    }

    fn raw(&self, key: &str) -> Option<(&str, usize)> {
        self.entries.get(key).map(|e| {
            e.used.set(true);
            (e.value.as_str(), e.line)
        })
    }

    fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some((value, line)) => value.parse().map(Some).map_err(|_| ConfigError::InvalidValue {
                line,
                key: format!("{}.{key}", self.name),
                value: value.to_string(),
            }),
        }
    }

    fn require<T: FromStr>(&self, key: &str) -> Result<T, ConfigError> {
        self.parse(key)?
            .ok_or_else(|| ConfigError::MissingKey(format!("{}.{key}", self.name)))
    }

    fn finish(&self) -> Result<(), ConfigError> {
        match self.entries.iter().find(|(_, e)| !e.used.get()) {
            Some((key, e)) => Err(ConfigError::UnknownKey {
                line: e.line,
                key: format!("{}.{key}", self.name),
            }),
            None => Ok(()),
        }
    }
}

fn parse_parity(section: &Section) -> Result<Parity, ConfigError> {
    match section.raw("parity") {
        None | Some(("even", _)) => Ok(Parity::Even),
        Some(("odd", _)) => Ok(Parity::Odd),
        Some((value, line)) => Err(ConfigError::InvalidValue {
            line,
            key: "operator.parity".into(),
            value: value.into(),
        }),
    }
}

fn build_operator(op: &Section) -> Result<OperatorSpec, ConfigError> {
    let (name, line) = op
        .raw("name")
        .ok_or_else(|| ConfigError::MissingKey("operator.name".into()))?;
    let d: usize = op.require("d")?;
    let spec = match name {
        "identity" => OperatorSpec::identity(d)?,
        "zero" => OperatorSpec::zero(d)?,
        "linear_scale" => OperatorSpec::linear_scale(d, op.require("gamma")?)?,
        "rotation_hard" => {
            let gamma: f64 = op.require("gamma")?;
            let literal = op.parse::<bool>("literal")?.unwrap_or(false);
            match (op.parse::<f64>("s")?, literal) {
                (s, true) => OperatorSpec::rotation_hard_literal(
                    d,
                    gamma,
                    s.unwrap_or_else(|| fplab_core::operators::default_rotation_shift(d, gamma)),
                )?,
                (Some(s), false) => OperatorSpec::rotation_hard(d, gamma, s)?,
                (None, false) => OperatorSpec::rotation_hard_default_shift(d, gamma)?,
            }
        }
        "piecewise_scale" => OperatorSpec::piecewise_scale(d, op.require("gamma")?, op.require("c")?)?,
        "piecewise_slope" => OperatorSpec::piecewise_slope(
            d,
            op.require("m_near")?,
            op.require("m_far")?,
            parse_parity(op)?,
        )?,
        "ball_projection" => OperatorSpec::ball_projection(d)?,
        "box_projection" => OperatorSpec::box_projection(d, op.require("lo")?, op.require("hi")?)?,
        "exp_shift" => OperatorSpec::exp_shift(d, op.require("alpha")?, op.require("D")?)?,
        "rotation_slope" => rotation_slope(
            d,
            op.require("m_near")?,
            op.require("m_far")?,
            op.parse("s")?,
            parse_parity(op)?,
        )?,
        "projected_rotation_scale" => {
            projected_rotation_scale(d, op.require("gamma")?, op.require("c")?, op.parse("s")?)?
        }
        other => {
            return Err(ConfigError::UnknownOperator {
                line,
                name: other.to_string(),
            })
        }
    };
    Ok(spec)
}

fn build_solver(sv: &Section, run: &Section) -> Result<(Algorithm, SolverConfig), ConfigError> {
    let (name, line) = sv
        .raw("name")
        .ok_or_else(|| ConfigError::MissingKey("solver.name".into()))?;
    let algorithm: Algorithm = name.parse().map_err(|_| ConfigError::UnknownSolver {
        line,
        name: name.to_string(),
    })?;
    let mut cfg = SolverConfig::default();
    if let Some(eps) = sv.parse("eps")? {
        cfg.target_eps = eps;
    }
    if let Some(beta) = sv.parse("beta")? {
        cfg.beta = beta;
    }
    if let Some(beta_prime) = sv.parse("beta_prime")? {
        cfg.beta_prime = beta_prime;
    }
    cfg.lambda = sv.parse("lambda")?;
    cfg.diameter = sv.parse("D")?;
    cfg.mu = sv.parse("mu")?;
    cfg.halt_mode = match sv.raw("halt_mode") {
        None | Some(("halt", _)) => HaltMode::Halt,
        Some(("break_revert", _)) => HaltMode::BreakRevert,
        Some((value, line)) => {
            return Err(ConfigError::InvalidValue {
                line,
                key: "solver.halt_mode".into(),
                value: value.into(),
            })
        }
    };
    if let Some(max) = run.parse("max_queries")? {
        cfg.max_queries = max;
    }
    if let Some(every) = run.parse("trace_every")? {
        cfg.trace_every = every;
    }
    algorithm.check_config(&cfg)?;
    Ok((algorithm, cfg))
}

/// Parses a configuration document. `default_seed` applies when the file has
/// no `run.seed`.
pub fn parse_config(text: &str, default_seed: u64) -> Result<RunConfig, ConfigError> {
    let mut sections = [Section::new("operator"), Section::new("solver"), Section::new("run")];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        let (section, field) = key.split_once('.').ok_or(ConfigError::Syntax { line })?;
        if field.is_empty() || value.is_empty() {
            return Err(ConfigError::Syntax { line });
        }
        let target = sections
            .iter_mut()
            .find(|s| s.name == section)
            .ok_or_else(|| ConfigError::UnknownKey {
                line,
                key: key.to_string(),
            })?;
        let entry = Entry {
            line,
            value: value.to_string(),
            used: Cell::new(false),
        };
        if target.entries.insert(field.to_string(), entry).is_some() {
            return Err(ConfigError::DuplicateKey {
                line,
                key: key.to_string(),
            });
        }
    }
    let [op, sv, run] = &sections;

    let operator = build_operator(op)?;
    let (algorithm, solver) = build_solver(sv, run)?;
    let seed = run.parse("seed")?.unwrap_or(default_seed);
    let x0_fill = run.parse("x0")?.unwrap_or(0.0);
    let output: PathBuf = run
        .parse::<String>("output")?
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(format!("{algorithm}.csv")));
    for s in &sections {
        s.finish()?;
    }
    let format = TraceFormat::from_path(&output);
    let run_id = output
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| algorithm.to_string());
    Ok(RunConfig {
        operator,
        algorithm,
        solver,
        x0_fill,
        seed,
        output,
        format,
        run_id,
    })
}

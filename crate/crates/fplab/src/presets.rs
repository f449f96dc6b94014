//! Parameter tables for the figure presets.

use fplab_core::{HaltMode, OperatorSpec, RealVector, SolverConfig};

use crate::algorithm::Algorithm;
use crate::error::HarnessError;
use crate::operators::{projected_rotation_scale, rotation_slope};

pub const PRESET_NAMES: [&str; 6] = ["fig1a", "fig1b", "fig1c", "fig2", "fig3", "fig4"];

const BETA: f64 = 0.975;
const BETA_PRIME: f64 = 1.0 / 1.01;

/// One (operator, algorithm) run of a preset.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub run_id: String,
    pub operator: OperatorSpec,
    pub algorithm: Algorithm,
    pub solver: SolverConfig,
    pub x0: RealVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: String,
    pub cells: Vec<Cell>,
}

/// `--set key=value` adjustments applied on top of a preset.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub d: Option<usize>,
    pub eps: Option<f64>,
    pub max_queries: Option<u64>,
    pub trace_every: Option<u64>,
    pub x0: Option<f64>,
}

impl Overrides {
    pub fn set(&mut self, assignment: &str) -> Result<(), HarnessError> {
        let bad = || HarnessError::InvalidOverride(assignment.to_string());
        let (key, value) = assignment.split_once('=').ok_or_else(bad)?;
        let value = value.trim();
        match key.trim() {
            "d" => self.d = Some(value.parse().map_err(|_| bad())?),
            "eps" => self.eps = Some(value.parse().map_err(|_| bad())?),
            "max_queries" => self.max_queries = Some(value.parse().map_err(|_| bad())?),
            "trace_every" => self.trace_every = Some(value.parse().map_err(|_| bad())?),
            "x0" => self.x0 = Some(value.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        }
        Ok(())
    }

    pub fn parse_all<'a>(items: impl IntoIterator<Item = &'a str>) -> Result<Self, HarnessError> {
        let mut o = Overrides::default();
        for item in items {
            o.set(item)?;
        }
        Ok(o)
    }
}

struct Defaults {
    d: usize,
    eps: f64,
    max_queries: u64,
    x0: f64,
}

impl Defaults {
    fn resolve(self, o: &Overrides) -> (usize, SolverConfig, f64) {
        let mut cfg = SolverConfig::new(o.eps.unwrap_or(self.eps), o.max_queries.unwrap_or(self.max_queries))
            .with_betas(BETA, BETA_PRIME);
        cfg.trace_every = o.trace_every.unwrap_or(1);
        (o.d.unwrap_or(self.d), cfg, o.x0.unwrap_or(self.x0))
    }
}

/// Compact decimal for file names: `0.25`, `0.0001`.
fn num(v: f64) -> String {
    format!("{v}")
}

fn fig1_gamma(name: &str) -> Option<(f64, &'static str)> {
    match name {
        "fig1a" => Some((1.0, "1")),
        "fig1b" => Some((10.0 / 11.0, "10over11")),
        "fig1c" => Some((5.0 / 6.0, "5over6")),
        _ => None,
    }
}

const BASELINES: [Algorithm; 4] = [
    Algorithm::Picard,
    Algorithm::Halpern,
    Algorithm::Restarted,
    Algorithm::AdaGhal,
];

pub fn preset(name: &str, o: &Overrides) -> Result<Preset, HarnessError> {
    let mut cells = Vec::new();
    let mut push = |stem: String, op: &OperatorSpec, alg: Algorithm, cfg: &SolverConfig, x0: f64| {
        cells.push(Cell {
            run_id: format!("{name}_{stem}_{alg}"),
            operator: op.clone(),
            algorithm: alg,
            solver: cfg.clone(),
            x0: RealVector::filled(op.dim(), x0)?,
        });
        Ok::<_, HarnessError>(())
    };
    if let Some((gamma, label)) = fig1_gamma(name) {
        let defaults = Defaults {
            d: 500,
            eps: 1e-8,
            max_queries: 10_000,
            x0: 0.0,
        };
        let (d, cfg, x0) = defaults.resolve(o);
        let op = OperatorSpec::rotation_hard_default_shift(d, gamma)?;
        for alg in BASELINES {
            push(format!("d{d}_g{label}"), &op, alg, &cfg, x0)?;
        }
    } else if name == "fig2" || name == "fig3" {
        let defaults = Defaults {
            d: 500,
            eps: 1e-8,
            max_queries: 20_000,
            x0: 4.0,
        };
        let (d, cfg, x0) = defaults.resolve(o);
        for c in [0.25, 0.5, 0.75] {
            let (m_near, m_far) = if name == "fig2" { (1.0, c) } else { (c, 1.0) };
            let op = rotation_slope(d, m_near, m_far, None, Default::default())?;
            for alg in BASELINES {
                push(format!("d{d}_c{}", num(c)), &op, alg, &cfg, x0)?;
            }
        }
    } else if name == "fig4" {
        let defaults = Defaults {
            d: 100,
            eps: 1e-8,
            max_queries: 100_000,
            x0: 0.0,
        };
        let (d, cfg, x0) = defaults.resolve(o);
        let ghal_cfg = cfg
            .clone()
            .with_diameter(2.0)
            .with_halt_mode(HaltMode::BreakRevert);
        for c in [0.1, 0.5, 0.9] {
            for dg in [1e-4, 1e-3, 1e-2] {
                let op = projected_rotation_scale(d, 1.0 + dg, c, None)?;
                let stem = format!("d{d}_c{}_dg{}", num(c), num(dg));
                for alg in [Algorithm::Picard, Algorithm::Halpern, Algorithm::Restarted] {
                    push(stem.clone(), &op, alg, &cfg, x0)?;
                }
                push(stem, &op, Algorithm::Ghal, &ghal_cfg, x0)?;
            }
        }
    } else {
        return Err(HarnessError::UnknownPreset(name.to_string()));
    }
    Ok(Preset {
        name: name.to_string(),
        cells,
    })
}

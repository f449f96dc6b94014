use std::fmt;
use std::str::FromStr;

use fplab_core::solvers::{adaghal, fixhal, fixhal_restarted, ghal, halpern_classic, picard};
use fplab_core::{CountedOperator, Error, RealVector, Result, RunResult, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Picard,
    Halpern,
    FixHal,
    Restarted,
    Ghal,
    AdaGhal,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Picard,
        Algorithm::Halpern,
        Algorithm::FixHal,
        Algorithm::Restarted,
        Algorithm::Ghal,
        Algorithm::AdaGhal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Picard => "picard",
            Algorithm::Halpern => "halpern",
            Algorithm::FixHal => "fixhal",
            Algorithm::Restarted => "restarted",
            Algorithm::Ghal => "ghal",
            Algorithm::AdaGhal => "adaghal",
        }
    }

    /// Checks solver-specific required settings before any query is spent.
    pub fn check_config(self, cfg: &SolverConfig) -> Result<()> {
        cfg.validate()?;
        match self {
            Algorithm::Ghal if cfg.diameter.is_none() => Err(Error::MissingDiameter),
            Algorithm::FixHal if cfg.lambda.is_none() => Err(Error::MissingInput("lambda")),
            _ => Ok(()),
        }
    }

    pub fn run(self, op: &mut CountedOperator, x0: &RealVector, cfg: &SolverConfig) -> Result<RunResult> {
        self.check_config(cfg)?;
        match self {
            Algorithm::Picard => picard(op, x0, cfg),
            Algorithm::Halpern => halpern_classic(op, x0, cfg),
            Algorithm::FixHal => fixhal(op, x0, cfg.lambda.unwrap_or_default(), cfg),
            Algorithm::Restarted => fixhal_restarted(op, x0, cfg),
            Algorithm::Ghal => ghal(op, x0, cfg),
            Algorithm::AdaGhal => adaghal(op, x0, cfg),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown solver `{s}`"))
    }
}

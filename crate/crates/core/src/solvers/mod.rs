//! Fixed-point solvers.
//!
//! All solvers share one accounting contract: each iterate costs exactly one
//! call to [`CountedOperator::evaluate`], and the returned `T(x)` is reused for
//! the residual test, any safeguard, and the next update. `max_queries` is
//! checked before every evaluation.

mod adaghal;
mod ghal;
mod halpern;
mod picard;
mod resolvent;

use alloc::vec::Vec;

pub use adaghal::adaghal;
pub use ghal::ghal;
pub use halpern::{fixhal, fixhal_restarted, halpern_classic, FixedStepIterates, Iterate};
pub use picard::picard;
pub use resolvent::{resolvent, DEFAULT_RESOLVENT_BUDGET};

use crate::error::{Error, Result};
use crate::oracle::CountedOperator;
use crate::vector::RealVector;

/// What GHAL does when its displacement safeguard fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum HaltMode {
    /// Stop and return the better of the current inner iterate and the phase
    /// anchor.
    #[default]
    Halt,
    /// Leave the inner loop and keep the previous step size from then on.
    BreakRevert,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SolverConfig {
    /// Target residual `ε`.
    pub target_eps: f64,
    /// Hard cap on oracle queries for the run.
    pub max_queries: u64,
    /// GHAL schedule ratio `β`.
    pub beta: f64,
    /// GHAL safeguard slack `β′`.
    pub beta_prime: f64,
    /// Fixed step for `fixhal` and per-phase step for the restarted variant.
    pub lambda: Option<f64>,
    /// Diameter estimate `D` (required by GHAL).
    pub diameter: Option<f64>,
    /// Error-bound constant `µ` for the restarted variant.
    pub mu: Option<f64>,
    pub halt_mode: HaltMode,
    /// Record every n-th iterate; phase boundaries and the last iterate are
    /// always recorded.
    pub trace_every: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            target_eps: 1e-6,
            max_queries: 100_000,
            beta: 0.975,
            beta_prime: 1.0 / 1.01,
            lambda: None,
            diameter: None,
            mu: None,
            halt_mode: HaltMode::Halt,
            trace_every: 1,
        }
    }
}

impl SolverConfig {
    pub fn new(target_eps: f64, max_queries: u64) -> Self {
        SolverConfig {
            target_eps,
            max_queries,
            ..Default::default()
        }
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda = Some(lambda);
        self
    }

    pub fn with_diameter(mut self, diameter: f64) -> Self {
        self.diameter = Some(diameter);
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn with_betas(mut self, beta: f64, beta_prime: f64) -> Self {
        self.beta = beta;
        self.beta_prime = beta_prime;
        self
    }

    pub fn with_halt_mode(mut self, mode: HaltMode) -> Self {
        self.halt_mode = mode;
        self
    }

    pub fn with_trace_every(mut self, every: u64) -> Self {
        self.trace_every = every;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.target_eps >= 0.0 && self.target_eps.is_finite()) {
            return Err(Error::invalid("eps", "target must be finite and non-negative"));
        }
        if self.max_queries == 0 {
            return Err(Error::invalid("max_queries", "budget must be positive"));
        }
        if !(self.beta > 0.0 && self.beta < 1.0) {
            return Err(Error::invalid("beta", "must lie in (0, 1)"));
        }
        if !(self.beta_prime > 0.0 && self.beta_prime < 1.0) {
            return Err(Error::invalid("beta_prime", "must lie in (0, 1)"));
        }
        if let Some(l) = self.lambda {
            if !(l > 0.0 && l < 1.0) {
                return Err(Error::invalid("lambda", "must lie in (0, 1)"));
            }
        }
        if let Some(d) = self.diameter {
            if !(d > 0.0 && d.is_finite()) {
                return Err(Error::invalid("D", "must be positive"));
            }
        }
        if let Some(mu) = self.mu {
            if !(mu > 0.0 && mu.is_finite()) {
                return Err(Error::invalid("mu", "must be positive"));
            }
        }
        if self.trace_every == 0 {
            return Err(Error::invalid("trace_every", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Termination {
    TargetReached,
    SafeguardHalt,
    BudgetExhausted,
    NonFinite,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::TargetReached => "target_reached",
            Termination::SafeguardHalt => "safeguard_halt",
            Termination::BudgetExhausted => "budget_exhausted",
            Termination::NonFinite => "non_finite",
        }
    }
}

impl core::fmt::Display for Termination {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One evaluated iterate.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceRecord {
    /// Zero-based index of the iterate within the run.
    pub global_iter: u64,
    /// Oracle queries spent so far, including the one that produced `residual`.
    pub queries: u64,
    pub residual: f64,
    pub lambda_current: f64,
    pub eps_k: Option<f64>,
    pub d_estimate: Option<f64>,
    /// Outer-loop or restart index.
    pub phase: u32,
}

#[derive(Debug, Clone, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IterationTrace {
    pub records: Vec<TraceRecord>,
}

impl IterationTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, TraceRecord> {
        self.records.iter()
    }
}

/// Counters for algorithm-specific events.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct RunEvents {
    pub safeguard_triggers: u64,
    pub diameter_doublings: u64,
    pub restarts: u64,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RunResult {
    pub final_point: RealVector,
    pub final_residual: f64,
    pub total_queries: u64,
    pub termination: Termination,
    pub events: RunEvents,
    pub trace: IterationTrace,
}

pub(crate) enum Stop {
    Budget,
    NonFinite,
    Invalid(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFinite => Stop::NonFinite,
            e => Stop::Invalid(e),
        }
    }
}

pub(crate) struct Outcome {
    pub point: RealVector,
    pub residual: f64,
    pub termination: Termination,
}

impl Outcome {
    pub fn new(point: RealVector, residual: f64, termination: Termination) -> Self {
        Outcome {
            point,
            residual,
            termination,
        }
    }
}

/// Bookkeeping shared by all solvers: budget, trace and best iterate.
pub(crate) struct Run<'a> {
    op: &'a mut CountedOperator,
    max_queries: u64,
    trace_every: u64,
    start: u64,
    records: Vec<TraceRecord>,
    pending: Option<TraceRecord>,
    last_phase: Option<u32>,
    best: Option<(RealVector, f64)>,
    pub events: RunEvents,
}

impl<'a> Run<'a> {
    pub fn new(op: &'a mut CountedOperator, x0: &RealVector, cfg: &SolverConfig) -> Result<Self> {
        cfg.validate()?;
        x0.check_dim(op.dim())?;
        let start = op.queries();
        Ok(Run {
            op,
            max_queries: cfg.max_queries,
            trace_every: cfg.trace_every,
            start,
            records: Vec::new(),
            pending: None,
            last_phase: None,
            best: None,
            events: RunEvents::default(),
        })
    }

    pub fn used(&self) -> u64 {
        self.op.queries() - self.start
    }

    pub fn eval(&mut self, x: &RealVector) -> Result<RealVector, Stop> {
        if self.used() >= self.max_queries {
            return Err(Stop::Budget);
        }
        Ok(self.op.evaluate(x)?)
    }

    pub fn distance(&self, a: &RealVector, b: &RealVector) -> f64 {
        a.distance(b, self.op.norm())
    }

    /// Logs the iterate evaluated by the most recent query.
    pub fn observe(
        &mut self,
        x: &RealVector,
        residual: f64,
        lambda: f64,
        eps_k: Option<f64>,
        d_estimate: Option<f64>,
        phase: u32,
    ) {
        let queries = self.used();
        let record = TraceRecord {
            global_iter: queries - 1,
            queries,
            residual,
            lambda_current: lambda,
            eps_k,
            d_estimate,
            phase,
        };
        let boundary = self.last_phase != Some(phase);
        if boundary {
            self.flush();
        }
        if boundary || record.global_iter.is_multiple_of(self.trace_every) {
            self.records.push(record);
            self.pending = None;
        } else {
            self.pending = Some(record);
        }
        self.last_phase = Some(phase);
        if self.best.as_ref().is_none_or(|(_, r)| residual < *r) {
            self.best = Some((x.clone(), residual));
        }
    }

    fn flush(&mut self) {
        if let Some(rec) = self.pending.take() {
            self.records.push(rec);
        }
    }

    /// Runs a solver body and converts early stops into a [`RunResult`].
    pub fn drive(
        mut self,
        x0: &RealVector,
        body: impl FnOnce(&mut Run<'a>) -> Result<Outcome, Stop>,
    ) -> Result<RunResult> {
        let outcome = match body(&mut self) {
            Ok(o) => o,
            Err(Stop::Invalid(e)) => return Err(e),
            Err(stop) => {
                let termination = match stop {
                    Stop::Budget => Termination::BudgetExhausted,
                    _ => Termination::NonFinite,
                };
                match self.best.take() {
                    Some((p, r)) => Outcome::new(p, r, termination),
                    None => Outcome::new(x0.clone(), f64::INFINITY, termination),
                }
            }
        };
        self.flush();
        Ok(RunResult {
            final_point: outcome.point,
            final_residual: outcome.residual,
            total_queries: self.used(),
            termination: outcome.termination,
            events: self.events,
            trace: IterationTrace {
                records: self.records,
            },
        })
    }
}

/// `(β·ε/D) / (1 + β·ε/D)`, the step size paired with target `ε`.
pub(crate) fn gradual_step(scale: f64, eps: f64, diameter: f64) -> f64 {
    let t = scale * eps / diameter;
    t / (1.0 + t)
}

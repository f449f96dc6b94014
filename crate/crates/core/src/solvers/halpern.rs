use super::{Outcome, Run, RunResult, SolverConfig, Termination};
use crate::error::{Error, Result};
use crate::oracle::CountedOperator;
use crate::vector::{combine, RealVector};

/// Classical Halpern iteration with anchoring weight `1/(k+1)` on `x_k`.
pub fn halpern_classic(
    op: &mut CountedOperator,
    x0: &RealVector,
    cfg: &SolverConfig,
) -> Result<RunResult> {
    let eps = cfg.target_eps;
    Run::new(op, x0, cfg)?.drive(x0, |run| {
        let mut x = x0.clone();
        let mut tx = run.eval(&x)?;
        let mut r = run.distance(&x, &tx);
        run.observe(&x, r, 1.0, None, None, 0);
        let mut k = 0u64;
        while r > eps {
            k += 1;
            let lambda = 1.0 / (k as f64 + 1.0);
            x = combine(x0, &tx, lambda)?;
            tx = run.eval(&x)?;
            r = run.distance(&x, &tx);
            run.observe(&x, r, lambda, None, None, 0);
        }
        Ok(Outcome::new(x, r, Termination::TargetReached))
    })
}

/// Halpern iteration with a constant anchoring weight.
pub fn fixhal(
    op: &mut CountedOperator,
    x0: &RealVector,
    lambda: f64,
    cfg: &SolverConfig,
) -> Result<RunResult> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::invalid("lambda", "must lie in (0, 1)"));
    }
    let eps = cfg.target_eps;
    Run::new(op, x0, cfg)?.drive(x0, |run| {
        let mut x = x0.clone();
        let mut tx = run.eval(&x)?;
        let mut r = run.distance(&x, &tx);
        run.observe(&x, r, lambda, None, None, 0);
        while r > eps {
            x = combine(x0, &tx, lambda)?;
            tx = run.eval(&x)?;
            r = run.distance(&x, &tx);
            run.observe(&x, r, lambda, None, None, 0);
        }
        Ok(Outcome::new(x, r, Termination::TargetReached))
    })
}

/// Restarted fixed-step Halpern.
///
/// A new phase starts, anchored at the current iterate, once the residual has
/// halved relative to the phase anchor. The step is `cfg.lambda` if given,
/// otherwise derived from `cfg.mu`, otherwise from the residual target of the
/// phase and the largest anchor distance seen so far.
pub fn fixhal_restarted(
    op: &mut CountedOperator,
    x0: &RealVector,
    cfg: &SolverConfig,
) -> Result<RunResult> {
    let eps = cfg.target_eps;
    let fixed = match (cfg.lambda, cfg.mu) {
        (Some(l), _) => Some(l),
        (None, Some(mu)) => {
            let t = mu / 8.0;
            Some(t / (1.0 + t))
        }
        (None, None) => None,
    };
    Run::new(op, x0, cfg)?.drive(x0, |run| {
        let mut anchor = x0.clone();
        let mut x = x0.clone();
        let mut tx = run.eval(&x)?;
        let mut r = run.distance(&x, &tx);
        let mut r_start = r;
        let mut d_est = r;
        let step = |r_start: f64, d_est: f64| {
            fixed.unwrap_or_else(|| {
                let target = 0.5 * r_start;
                target / (4.0 * d_est + target)
            })
        };
        let mut lambda = step(r_start, d_est);
        let mut phase = 0u32;
        run.observe(&x, r, lambda, None, Some(d_est), phase);
        let mut phase_max = 0.0f64;
        while r > eps {
            if r <= 0.5 * r_start && phase_max > 0.0 {
                anchor = x.clone();
                r_start = r;
                d_est = d_est.max(phase_max);
                phase_max = 0.0;
                lambda = step(r_start, d_est);
                phase += 1;
                run.events.restarts += 1;
            }
            x = combine(&anchor, &tx, lambda)?;
            tx = run.eval(&x)?;
            r = run.distance(&x, &tx);
            phase_max = phase_max.max(run.distance(&x, &anchor));
            run.observe(&x, r, lambda, None, Some(d_est), phase);
        }
        Ok(Outcome::new(x, r, Termination::TargetReached))
    })
}

/// One step of a fixed-step Halpern sequence: the iterate and its image.
#[derive(Debug, Clone, PartialEq)]
pub struct Iterate {
    pub point: RealVector,
    pub image: RealVector,
}

/// Unbounded iterator over `x_{k+1} = λ·x_0 + (1−λ)·T(x_k)`, starting at `x_0`.
///
/// Each item costs one query. Iteration stops after the first error.
pub struct FixedStepIterates<'a> {
    op: &'a mut CountedOperator,
    anchor: RealVector,
    lambda: f64,
    last_image: Option<RealVector>,
    failed: bool,
}

impl<'a> FixedStepIterates<'a> {
    pub fn new(op: &'a mut CountedOperator, x0: RealVector, lambda: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(Error::invalid("lambda", "must lie in [0, 1]"));
        }
        x0.check_dim(op.dim())?;
        Ok(FixedStepIterates {
            op,
            anchor: x0,
            lambda,
            last_image: None,
            failed: false,
        })
    }
}

impl Iterator for FixedStepIterates<'_> {
    type Item = Result<Iterate>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let mut step = || -> Result<Iterate> {
            let point = match &self.last_image {
                None => self.anchor.clone(),
                Some(t) => combine(&self.anchor, t, self.lambda)?,
            };
            let image = self.op.evaluate(&point)?;
            Ok(Iterate { point, image })
        };
        let item = step();
        match &item {
            Ok(it) => self.last_image = Some(it.image.clone()),
            Err(_) => self.failed = true,
        }
        Some(item)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::OperatorSpec;
    use alloc::vec;
    use alloc::vec::Vec;

    fn x1() -> RealVector {
        RealVector::new(vec![1.0]).unwrap()
    }

    #[test]
    fn classic_on_zero_map() {
        let mut op = CountedOperator::new(OperatorSpec::zero(1).unwrap());
        let res = halpern_classic(&mut op, &x1(), &SolverConfig::new(0.0, 4)).unwrap();
        let lambdas: Vec<f64> = res.trace.iter().map(|r| r.lambda_current).collect();
        assert_eq!(lambdas, vec![1.0, 0.5, 1.0 / 3.0, 0.25]);
        let residuals: Vec<f64> = res.trace.iter().map(|r| r.residual).collect();
        assert_eq!(residuals, vec![1.0, 0.5, 1.0 / 3.0, 0.25]);
    }

    #[test]
    fn fixed_step_iterates_follow_closed_form() {
        let mut op = CountedOperator::new(OperatorSpec::zero(1).unwrap());
        let pts: Vec<f64> = FixedStepIterates::new(&mut op, x1(), 0.25)
            .unwrap()
            .take(3)
            .map(|it| it.unwrap().point[0])
            .collect();
        assert_eq!(pts, vec![1.0, 0.25, 0.25]);
        assert_eq!(op.queries(), 3);
    }

    #[test]
    fn fixhal_rejects_unit_lambda() {
        let mut op = CountedOperator::new(OperatorSpec::identity(1).unwrap());
        assert!(fixhal(&mut op, &x1(), 1.0, &SolverConfig::default()).is_err());
    }

    #[test]
    fn restarted_reaches_target_on_rotation() {
        let spec = OperatorSpec::rotation_hard_default_shift(20, 1.0).unwrap();
        let mut op = CountedOperator::new(spec);
        let x0 = RealVector::zeros(20).unwrap();
        let res = fixhal_restarted(&mut op, &x0, &SolverConfig::new(1e-4, 200_000)).unwrap();
        assert_eq!(res.termination, Termination::TargetReached);
        assert!(res.events.restarts > 0);
    }
}

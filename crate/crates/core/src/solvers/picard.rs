use super::{Outcome, Run, SolverConfig, Termination};
use crate::error::Result;
use crate::oracle::CountedOperator;
use crate::solvers::RunResult;
use crate::vector::RealVector;

/// Plain iteration `x_{k+1} = T(x_k)`.
pub fn picard(op: &mut CountedOperator, x0: &RealVector, cfg: &SolverConfig) -> Result<RunResult> {
    let eps = cfg.target_eps;
    Run::new(op, x0, cfg)?.drive(x0, |run| {
        let mut x = x0.clone();
        let mut tx = run.eval(&x)?;
        let mut r = run.distance(&x, &tx);
        run.observe(&x, r, 0.0, None, None, 0);
        while r > eps {
            x = tx;
            tx = run.eval(&x)?;
            r = run.distance(&x, &tx);
            run.observe(&x, r, 0.0, None, None, 0);
        }
        Ok(Outcome::new(x, r, Termination::TargetReached))
    })
}

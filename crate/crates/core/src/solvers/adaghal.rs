use super::{gradual_step, Outcome, Run, RunResult, SolverConfig, Termination};
use crate::error::Result;
use crate::oracle::CountedOperator;
use crate::vector::{combine, RealVector};

/// Parameter-free gradual Halpern.
///
/// Starts with `D = ε_0 = ‖T(x_0) − x_0‖`, halves the residual target each
/// phase, and doubles `D` whenever an inner iterate leaves the ball of radius
/// `D` around the phase anchor. After a doubling the iterate falls back to the
/// better of the candidate and the anchor.
pub fn adaghal(op: &mut CountedOperator, x0: &RealVector, cfg: &SolverConfig) -> Result<RunResult> {
    let eps = cfg.target_eps;
    Run::new(op, x0, cfg)?.drive(x0, |run| {
        let tx0 = run.eval(x0)?;
        let eps0 = run.distance(x0, &tx0);
        let mut d = eps0;
        run.observe(x0, eps0, 0.0, Some(eps0), Some(d), 0);

        let (mut xhat, mut txhat, mut rhat) = (x0.clone(), tx0, eps0);
        let mut eps_k = eps0;
        let mut phase = 0u32;
        while rhat > eps {
            phase += 1;
            eps_k *= 0.5;
            let mut lambda = gradual_step(0.5, eps_k, d);
            let (mut y, mut ty, mut r) = (xhat.clone(), txhat.clone(), rhat);
            while r > eps_k {
                let next = combine(&xhat, &ty, lambda)?;
                if run.distance(&y, &xhat) <= d {
                    y = next;
                    ty = run.eval(&y)?;
                    r = run.distance(&y, &ty);
                } else {
                    d *= 2.0;
                    run.events.diameter_doublings += 1;
                    lambda = gradual_step(0.5, eps_k, d);
                    let t_next = run.eval(&next)?;
                    let r_next = run.distance(&next, &t_next);
                    if r_next < rhat {
                        (y, ty, r) = (next, t_next, r_next);
                    } else {
                        (y, ty, r) = (xhat.clone(), txhat.clone(), rhat);
                    }
                }
                run.observe(&y, r, lambda, Some(eps_k), Some(d), phase);
            }
            xhat = y;
            txhat = ty;
            rhat = r;
        }
        Ok(Outcome::new(xhat, rhat, Termination::TargetReached))
    })
}

use super::{gradual_step, HaltMode, Outcome, Run, RunResult, SolverConfig, Termination};
use crate::error::{Error, Result};
use crate::oracle::CountedOperator;
use crate::vector::{combine, RealVector};

/// Gradual Halpern with a geometric residual schedule.
///
/// Phase `k` targets `ε_k = β^k·ε_0` with step `λ_k = (βε_k/D)/(1+βε_k/D)`,
/// restarting the fixed-step iteration from the previous phase's output. The
/// inner loop watches the displacement `‖y_{j+1} − y_j‖` and reacts according
/// to `cfg.halt_mode` when it fails to shrink by `1 − β′λ_k`.
pub fn ghal(op: &mut CountedOperator, x0: &RealVector, cfg: &SolverConfig) -> Result<RunResult> {
    let d = cfg.diameter.ok_or(Error::MissingDiameter)?;
    let (eps, beta, beta_prime, mode) = (cfg.target_eps, cfg.beta, cfg.beta_prime, cfg.halt_mode);
    Run::new(op, x0, cfg)?.drive(x0, |run| {
        let tx0 = run.eval(x0)?;
        let eps0 = run.distance(x0, &tx0);
        let mut lambda_prev = gradual_step(beta, eps0, d);
        run.observe(x0, eps0, lambda_prev, Some(eps0), Some(d), 0);

        let (mut xhat, mut txhat, mut rhat) = (x0.clone(), tx0, eps0);
        let mut locked: Option<f64> = None;
        let mut eps_k = eps0;
        let mut phase = 0u32;
        while rhat > eps {
            phase += 1;
            eps_k *= beta;
            let lambda = locked.unwrap_or_else(|| gradual_step(beta, eps_k, d));
            let contraction = 1.0 - beta_prime * lambda;

            let (mut y, mut ty, mut r) = (xhat.clone(), txhat.clone(), rhat);
            let mut prev_step = f64::INFINITY;
            let mut j = 0u64;
            while r > eps_k {
                let next = combine(&xhat, &ty, lambda)?;
                let step = run.distance(&next, &y);
                if j >= 2 && step >= contraction * prev_step {
                    run.events.safeguard_triggers += 1;
                    match mode {
                        HaltMode::Halt => {
                            let (p, pr) = if r < rhat { (y, r) } else { (xhat, rhat) };
                            return Ok(Outcome::new(p, pr, Termination::SafeguardHalt));
                        }
                        HaltMode::BreakRevert => {
                            locked = Some(lambda_prev);
                            break;
                        }
                    }
                }
                prev_step = step;
                j += 1;
                y = next;
                ty = run.eval(&y)?;
                r = run.distance(&y, &ty);
                run.observe(&y, r, lambda, Some(eps_k), Some(d), phase);
            }
            lambda_prev = locked.unwrap_or(lambda);
            xhat = y;
            txhat = ty;
            rhat = r;
        }
        Ok(Outcome::new(xhat, rhat, Termination::TargetReached))
    })
}

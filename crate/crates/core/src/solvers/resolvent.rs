use crate::error::{Error, Result};
use crate::oracle::CountedOperator;
use crate::vector::{combine, RealVector};

pub const DEFAULT_RESOLVENT_BUDGET: u64 = 1_000_000;

/// Approximates the fixed point of `S(y) = x/(1+τ) + τ/(1+τ)·T(y)`.
///
/// Uses Picard iteration on `S` from `y_0 = x`. With `γ` taken from the
/// operator's Lipschitz metadata (1 if unknown), `S` contracts with factor
/// `q = τγ/(1+τ)`, and iteration stops once the a-posteriori bound
/// `q/(1−q)·‖y_{j+1} − y_j‖` is at most `tol`. Every evaluation of `T` is
/// counted on `op`.
pub fn resolvent(
    op: &mut CountedOperator,
    x: &RealVector,
    tau: f64,
    tol: f64,
    budget: u64,
) -> Result<RealVector> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::invalid("tau", "must be positive"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("tol", "must be positive"));
    }
    x.check_dim(op.dim())?;
    let gamma = op.spec().lipschitz().unwrap_or(1.0);
    let q = tau * gamma / (1.0 + tau);
    if q >= 1.0 {
        return Err(Error::ContractionFailure);
    }
    let threshold = tol * (1.0 - q) / q.max(f64::MIN_POSITIVE);
    let anchor_weight = 1.0 / (1.0 + tau);

    let mut y = x.clone();
    let mut ty = op.evaluate(&y)?;
    if ty == *x {
        return Ok(y);
    }
    let mut prev_step = f64::INFINITY;
    for _ in 0..budget {
        let next = combine(x, &ty, anchor_weight)?;
        let step = next.distance(&y, op.norm());
        if step <= threshold {
            return Ok(next);
        }
        if step > prev_step * (1.0 + 1e-12) {
            return Err(Error::ContractionFailure);
        }
        prev_step = step;
        y = next;
        ty = op.evaluate(&y)?;
    }
    Err(Error::InnerBudgetExhausted(budget))
}

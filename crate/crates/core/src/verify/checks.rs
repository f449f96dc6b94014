use crate::error::{Error, Result};
use crate::operators::OperatorSpec;
use crate::oracle::CountedOperator;
use crate::sampler::DomainSampler;
use crate::vector::{NormKind, RealVector};

pub const DEFAULT_PAIRS: u64 = 100_000;
/// Slack for ratio-type inequalities, relative to the right-hand side.
pub const RELATIVE_TOL: f64 = 1e-9;
/// Slack for inner-product inequalities, scaled by `1 + ‖x − y‖²`.
pub const INNER_PRODUCT_TOL: f64 = 1e-9;
/// Pairs closer than this are skipped.
pub const MIN_SEPARATION: f64 = 1e-12;

/// Outcome of a sampled property check.
///
/// `worst_ratio` is check specific: the largest observed ratio of the
/// left-hand side to its allowed value, or the empirical modulus for the
/// inner-product checks. A failed, conclusive report always carries a witness.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CheckReport {
    pub passed: bool,
    pub samples_tested: u64,
    pub skipped: u64,
    pub worst_ratio: f64,
    pub witness: Option<(RealVector, RealVector)>,
    /// Index `k` of the offending step for trace-based checks.
    pub witness_index: Option<usize>,
    pub tolerance: f64,
    pub seed: u64,
    /// Too little data to decide; `passed` is false and there is no witness.
    pub inconclusive: bool,
}

impl CheckReport {
    fn empty(tolerance: f64, seed: u64) -> Self {
        CheckReport {
            passed: true,
            samples_tested: 0,
            skipped: 0,
            worst_ratio: 0.0,
            witness: None,
            witness_index: None,
            tolerance,
            seed,
            inconclusive: false,
        }
    }

    fn record(&mut self, m: &Margin, ratio: f64, x: &RealVector, y: &RealVector) {
        self.samples_tested += 1;
        if ratio > self.worst_ratio || self.samples_tested == 1 {
            self.worst_ratio = ratio;
        }
        if m.violated() && self.passed {
            self.passed = false;
            self.witness = Some((x.clone(), y.clone()));
        }
    }
}

/// Both sides of a sampled inequality `lhs ≤ rhs + slack`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margin {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

impl Margin {
    pub fn violated(&self) -> bool {
        !(self.lhs <= self.rhs + self.slack)
    }

    fn ratio(&self) -> f64 {
        if self.rhs > 0.0 {
            self.lhs / self.rhs
        } else if self.lhs > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }
}

fn image(spec: &OperatorSpec, x: &RealVector) -> Result<RealVector> {
    x.check_dim(spec.dim())?;
    RealVector::new(spec.apply(x.as_slice()))
}

fn require_l2(op: &CountedOperator) -> Result<()> {
    match op.norm() {
        NormKind::EuclideanL2 => Ok(()),
        NormKind::SupLinf => Err(Error::NormMismatch),
    }
}

/// `‖T(x) − T(y)‖ / ‖x − y‖`.
pub fn lipschitz_ratio(spec: &OperatorSpec, x: &RealVector, y: &RealVector) -> Result<f64> {
    let (tx, ty) = (image(spec, x)?, image(spec, y)?);
    Ok(tx.distance(&ty, spec.norm()) / x.distance(y, spec.norm()))
}

/// Empirical Lipschitz constant over sampled pairs.
///
/// Passes iff no ratio exceeds the operator's declared constant (when it has
/// one) by more than [`RELATIVE_TOL`].
pub fn estimate_lipschitz(
    op: &mut CountedOperator,
    sampler: &mut DomainSampler,
    n_pairs: u64,
) -> Result<CheckReport> {
    if n_pairs == 0 {
        return Err(Error::invalid("n_pairs", "must be positive"));
    }
    let claimed = op.spec().lipschitz();
    let norm = op.norm();
    let mut report = CheckReport::empty(RELATIVE_TOL, sampler.seed());
    for _ in 0..n_pairs {
        let (x, y) = sampler.pair();
        let sep = x.distance(&y, norm);
        if sep < MIN_SEPARATION {
            report.skipped += 1;
            continue;
        }
        let tx = op.evaluate(&x)?;
        let ty = op.evaluate(&y)?;
        let lhs = tx.distance(&ty, norm) / sep;
        let margin = match claimed {
            Some(g) => Margin {
                lhs,
                rhs: g,
                slack: RELATIVE_TOL * g,
            },
            None => Margin {
                lhs,
                rhs: f64::INFINITY,
                slack: 0.0,
            },
        };
        report.record(&margin, lhs, &x, &y);
    }
    Ok(report)
}

fn gradual_expansion(
    x: &RealVector,
    y: &RealVector,
    tx: &RealVector,
    ty: &RealVector,
    norm: NormKind,
    diameter: f64,
    alpha: f64,
    tol: f64,
) -> Margin {
    let rx = tx.distance(x, norm);
    let ry = ty.distance(y, norm);
    let rhs = (1.0 + alpha * rx.max(ry) / diameter) * x.distance(y, norm);
    Margin {
        lhs: tx.distance(ty, norm),
        rhs,
        slack: tol,
    }
}

/// Gradual-expansion inequality evaluated at one pair.
pub fn gradual_expansion_margin(
    spec: &OperatorSpec,
    x: &RealVector,
    y: &RealVector,
    diameter: f64,
    alpha: f64,
    tol: f64,
) -> Result<Margin> {
    let (tx, ty) = (image(spec, x)?, image(spec, y)?);
    Ok(gradual_expansion(x, y, &tx, &ty, spec.norm(), diameter, alpha, tol))
}

/// Samples `‖T(x) − T(y)‖ ≤ (1 + α·max{‖T(x) − x‖, ‖T(y) − y‖}/D)·‖x − y‖`.
pub fn check_gradually_expansive(
    op: &mut CountedOperator,
    diameter: f64,
    alpha: f64,
    sampler: &mut DomainSampler,
    n_pairs: u64,
    tol: f64,
) -> Result<CheckReport> {
    validate_common(diameter, alpha, n_pairs)?;
    let norm = op.norm();
    let mut report = CheckReport::empty(tol, sampler.seed());
    for _ in 0..n_pairs {
        let (x, y) = sampler.pair();
        if x.distance(&y, norm) < MIN_SEPARATION {
            report.skipped += 1;
            continue;
        }
        let tx = op.evaluate(&x)?;
        let ty = op.evaluate(&y)?;
        let m = gradual_expansion(&x, &y, &tx, &ty, norm, diameter, alpha, tol);
        report.record(&m, m.ratio(), &x, &y);
    }
    Ok(report)
}

fn f_condition(
    x: &RealVector,
    y: &RealVector,
    fx: &RealVector,
    fy: &RealVector,
    norm: NormKind,
    diameter: f64,
    alpha: f64,
    tol: f64,
) -> Margin {
    let scale = alpha / diameter * norm.of(fx.as_slice()).max(norm.of(fy.as_slice()));
    Margin {
        lhs: fx.distance(fy, norm),
        rhs: scale * x.distance(y, norm),
        slack: tol,
    }
}

/// The `F` premise evaluated at one pair.
pub fn f_condition_margin(
    spec: &OperatorSpec,
    x: &RealVector,
    y: &RealVector,
    diameter: f64,
    alpha: f64,
    tol: f64,
) -> Result<Margin> {
    let (fx, fy) = (image(spec, x)?, image(spec, y)?);
    Ok(f_condition(x, y, &fx, &fy, spec.norm(), diameter, alpha, tol))
}

/// Samples `‖F(x) − F(y)‖ ≤ (α/D)·max{‖F(x)‖, ‖F(y)‖}·‖x − y‖`.
pub fn check_f_condition(
    op_f: &mut CountedOperator,
    diameter: f64,
    alpha: f64,
    sampler: &mut DomainSampler,
    n_pairs: u64,
    tol: f64,
) -> Result<CheckReport> {
    validate_common(diameter, alpha, n_pairs)?;
    let norm = op_f.norm();
    let mut report = CheckReport::empty(tol, sampler.seed());
    for _ in 0..n_pairs {
        let (x, y) = sampler.pair();
        if x.distance(&y, norm) < MIN_SEPARATION {
            report.skipped += 1;
            continue;
        }
        let fx = op_f.evaluate(&x)?;
        let fy = op_f.evaluate(&y)?;
        let m = f_condition(&x, &y, &fx, &fy, norm, diameter, alpha, tol);
        report.record(&m, m.ratio(), &x, &y);
    }
    Ok(report)
}

struct InnerProduct {
    inner: f64,
    sep_sq: f64,
}

fn inner_product(x: &RealVector, y: &RealVector, fx: &RealVector, fy: &RealVector) -> InnerProduct {
    let mut inner = 0.0;
    let mut sep_sq = 0.0;
    for i in 0..x.dim() {
        let dx = x[i] - y[i];
        inner += (fx[i] - fy[i]) * dx;
        sep_sq += dx * dx;
    }
    InnerProduct { inner, sep_sq }
}

/// `−⟨F(x) − F(y), x − y⟩ ≤ µ‖x − y‖²` as a margin.
fn hypomonotone(ip: &InnerProduct, mu: f64, tol: f64) -> Margin {
    Margin {
        lhs: -ip.inner,
        rhs: mu * ip.sep_sq,
        slack: tol * (1.0 + ip.sep_sq),
    }
}

/// Hypomonotonicity inequality evaluated at one pair.
pub fn hypomonotone_margin(
    spec: &OperatorSpec,
    x: &RealVector,
    y: &RealVector,
    mu: f64,
    tol: f64,
) -> Result<Margin> {
    let (fx, fy) = (image(spec, x)?, image(spec, y)?);
    Ok(hypomonotone(&inner_product(x, y, &fx, &fy), mu, tol))
}

/// Samples `⟨F(x) − F(y), x − y⟩ ≥ −µ‖x − y‖²`.
///
/// `worst_ratio` is the largest observed `−⟨F(x) − F(y), x − y⟩/‖x − y‖²`.
pub fn check_hypomonotone(
    op_f: &mut CountedOperator,
    mu: f64,
    sampler: &mut DomainSampler,
    n_pairs: u64,
    tol: f64,
) -> Result<CheckReport> {
    require_l2(op_f)?;
    if !(mu >= 0.0) {
        return Err(Error::invalid("mu", "must be non-negative"));
    }
    if n_pairs == 0 {
        return Err(Error::invalid("n_pairs", "must be positive"));
    }
    let mut report = CheckReport::empty(tol, sampler.seed());
    for _ in 0..n_pairs {
        let (x, y) = sampler.pair();
        if x.distance(&y, NormKind::EuclideanL2) < MIN_SEPARATION {
            report.skipped += 1;
            continue;
        }
        let fx = op_f.evaluate(&x)?;
        let fy = op_f.evaluate(&y)?;
        let ip = inner_product(&x, &y, &fx, &fy);
        let m = hypomonotone(&ip, mu, tol);
        report.record(&m, -ip.inner / ip.sep_sq, &x, &y);
    }
    Ok(report)
}

fn gradual_resolvent(
    ip: &InnerProduct,
    fx: &RealVector,
    fy: &RealVector,
    diameter: f64,
    alpha: f64,
    tol: f64,
) -> (Margin, f64) {
    let l2 = NormKind::EuclideanL2;
    let tau = alpha / diameter * l2.of(fx.as_slice()).max(l2.of(fy.as_slice()));
    let modulus = tau / (1.0 + tau);
    (hypomonotone(ip, modulus, tol), modulus)
}

/// Gradual resolvent inequality evaluated at one pair.
pub fn gradual_resolvent_margin(
    spec: &OperatorSpec,
    x: &RealVector,
    y: &RealVector,
    diameter: f64,
    alpha: f64,
    tol: f64,
) -> Result<Margin> {
    let (fx, fy) = (image(spec, x)?, image(spec, y)?);
    let ip = inner_product(x, y, &fx, &fy);
    Ok(gradual_resolvent(&ip, &fx, &fy, diameter, alpha, tol).0)
}

/// Samples `⟨F(x) − F(y), x − y⟩ ≥ −τ/(1+τ)·‖x − y‖²` with
/// `τ = (α/D)·max{‖F(x)‖, ‖F(y)‖}`.
///
/// `worst_ratio` is the largest observed empirical modulus divided by the
/// allowed one `τ/(1+τ)`.
pub fn check_gradual_resolvent_condition(
    op_f: &mut CountedOperator,
    diameter: f64,
    alpha: f64,
    sampler: &mut DomainSampler,
    n_pairs: u64,
    tol: f64,
) -> Result<CheckReport> {
    require_l2(op_f)?;
    validate_common(diameter, alpha, n_pairs)?;
    let mut report = CheckReport::empty(tol, sampler.seed());
    for _ in 0..n_pairs {
        let (x, y) = sampler.pair();
        if x.distance(&y, NormKind::EuclideanL2) < MIN_SEPARATION {
            report.skipped += 1;
            continue;
        }
        let fx = op_f.evaluate(&x)?;
        let fy = op_f.evaluate(&y)?;
        let ip = inner_product(&x, &y, &fx, &fy);
        let (m, modulus) = gradual_resolvent(&ip, &fx, &fy, diameter, alpha, tol);
        let observed = -ip.inner / ip.sep_sq;
        let ratio = if modulus > 0.0 {
            observed / modulus
        } else if observed > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        report.record(&m, ratio, &x, &y);
    }
    Ok(report)
}

/// Displacement contraction at step `k`:
/// `‖x_{k+1} − x_k‖ ≤ (1 − β′λ)·‖x_k − x_{k−1}‖`.
pub fn increment_margin(
    iterates: &[RealVector],
    k: usize,
    norm: NormKind,
    lambda: f64,
    beta_prime: f64,
) -> Option<Margin> {
    if k == 0 || k + 1 >= iterates.len() {
        return None;
    }
    let rhs = (1.0 - beta_prime * lambda) * iterates[k].distance(&iterates[k - 1], norm);
    Some(Margin {
        lhs: iterates[k + 1].distance(&iterates[k], norm),
        rhs,
        slack: RELATIVE_TOL * rhs,
    })
}

/// Checks displacement contraction along a constant-step iterate sequence.
///
/// Needs at least three iterates; shorter input gives an inconclusive report.
pub fn check_increment_contraction(
    iterates: &[RealVector],
    norm: NormKind,
    lambda: f64,
    beta_prime: f64,
) -> CheckReport {
    let mut report = CheckReport::empty(RELATIVE_TOL, 0);
    if iterates.len() < 3 {
        report.passed = false;
        report.inconclusive = true;
        return report;
    }
    for k in 1..iterates.len() - 1 {
        let m = match increment_margin(iterates, k, norm, lambda, beta_prime) {
            Some(m) => m,
            None => continue,
        };
        let passed_before = report.passed;
        report.record(&m, m.ratio(), &iterates[k + 1], &iterates[k]);
        if passed_before && !report.passed {
            report.witness_index = Some(k);
        }
    }
    report
}

fn validate_common(diameter: f64, alpha: f64, n_pairs: u64) -> Result<()> {
    if !(diameter > 0.0 && diameter.is_finite()) {
        return Err(Error::invalid("D", "must be positive"));
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::invalid("alpha", "must be non-negative"));
    }
    if n_pairs == 0 {
        return Err(Error::invalid("n_pairs", "must be positive"));
    }
    Ok(())
}

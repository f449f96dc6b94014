use crate::error::{Error, Result};

/// Problem constants shared by the bound evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundInputs {
    /// Initial residual `‖T(x_0) − x_0‖`.
    pub eps0: f64,
    /// Target residual.
    pub eps: f64,
    pub gamma: f64,
    /// Bound on `‖x_0 − x*‖`.
    pub d_star: Option<f64>,
    /// Diameter of the domain.
    pub d: Option<f64>,
    pub beta: Option<f64>,
    pub beta_prime: Option<f64>,
    pub mu: Option<f64>,
}

impl BoundInputs {
    pub fn new(eps0: f64, eps: f64) -> Self {
        BoundInputs {
            eps0,
            eps,
            gamma: 1.0,
            d_star: None,
            d: None,
            beta: None,
            beta_prime: None,
            mu: None,
        }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_d_star(mut self, d_star: f64) -> Self {
        self.d_star = Some(d_star);
        self
    }

    pub fn with_d(mut self, d: f64) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_beta_prime(mut self, beta_prime: f64) -> Self {
        self.beta_prime = Some(beta_prime);
        self
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = Some(mu);
        self
    }

    pub fn validate(&self) -> Result<()> {
        positive("eps0", self.eps0)?;
        positive("eps", self.eps)?;
        positive("gamma", self.gamma)?;
        for (name, v) in [("D_star", self.d_star), ("D", self.d), ("mu", self.mu)] {
            if let Some(v) = v {
                positive(name, v)?;
            }
        }
        for (name, v) in [("beta", self.beta), ("beta_prime", self.beta_prime)] {
            if let Some(v) = v {
                if !(v > 0.0 && v < 1.0) {
                    return Err(Error::invalid(name, "must lie in (0, 1)"));
                }
            }
        }
        Ok(())
    }
}

/// Step size and iteration count.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct StepBound {
    pub lambda: f64,
    pub k: u64,
    /// The count overflowed; `k` is `u64::MAX`.
    pub saturated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ErrorLevelBound {
    pub lambda: f64,
    pub k: u64,
    pub error_level: f64,
    pub saturated: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LebBound {
    pub lambda_max: f64,
    pub k: u64,
    pub saturated: bool,
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, "must be positive and finite"))
    }
}

/// `⌈ln(ratio)/rate⌉`, zero when `ratio ≤ 1`, saturating beyond 2^53.
fn log_count(ratio: f64, rate: f64) -> (u64, bool) {
    if ratio <= 1.0 {
        return (0, false);
    }
    let raw = libm::ceil(libm::log(ratio) / rate);
    if raw.is_finite() && (0.0..=9_007_199_254_740_992.0).contains(&raw) {
        (raw as u64, false)
    } else {
        (u64::MAX, true)
    }
}

/// `ln(1/(1−λ))` without cancellation for small `λ`.
fn neg_log1m(lambda: f64) -> f64 {
    -libm::log1p(-lambda)
}

/// Fixed-step bound for `γ ≤ 1`: `λ = ε/(4D* + ε)` and
/// `k = ⌈ln(2ε₀/ε)/(ln(1/(1−λ)) + ln(1/γ))⌉`.
pub fn bound_fixed_step(inputs: &BoundInputs) -> Result<StepBound> {
    inputs.validate()?;
    let d_star = inputs.d_star.ok_or(Error::MissingInput("D_star"))?;
    if inputs.gamma > 1.0 {
        return Err(Error::GammaOutOfRange {
            gamma: inputs.gamma,
            limit: 1.0,
        });
    }
    let lambda = inputs.eps / (4.0 * d_star + inputs.eps);
    let rate = neg_log1m(lambda) - libm::log(inputs.gamma);
    let (k, saturated) = log_count(2.0 * inputs.eps0 / inputs.eps, rate);
    Ok(StepBound {
        lambda,
        k,
        saturated,
    })
}

/// Mild-expansion bound: `λ = (βε/D)/(1 + βε/D)` and
/// `k = ⌈ln(ε₀/((1−β)ε))/(−ln((1−λ)γ))⌉`, valid for `γ < 1 + βε/D`.
pub fn bound_mild(inputs: &BoundInputs) -> Result<StepBound> {
    inputs.validate()?;
    let d = inputs.d.ok_or(Error::MissingInput("D"))?;
    let beta = inputs.beta.ok_or(Error::MissingInput("beta"))?;
    let t = beta * inputs.eps / d;
    let limit = 1.0 + t;
    if inputs.gamma >= limit {
        return Err(Error::GammaOutOfRange {
            gamma: inputs.gamma,
            limit,
        });
    }
    let lambda = t / (1.0 + t);
    let rate = neg_log1m(lambda) - libm::log(inputs.gamma);
    if !(rate > 0.0) {
        return Err(Error::GammaOutOfRange {
            gamma: inputs.gamma,
            limit,
        });
    }
    let (k, saturated) = log_count(inputs.eps0 / ((1.0 - beta) * inputs.eps), rate);
    Ok(StepBound {
        lambda,
        k,
        saturated,
    })
}

/// Error-level bound for `γ > 1` with `λ = 1 − β/γ`.
///
/// With `β` given: `k = ⌈ln(ε₀/ε)/ln(1/β)⌉` and level `(γ/β − 1)D + ε`.
/// Without `β`, uses `β = 1 − ε/(2γD)`, runs the count to `ε/2`, and reports
/// level `(γ − 1)D + ε`.
pub fn bound_corollary_mild(inputs: &BoundInputs) -> Result<ErrorLevelBound> {
    inputs.validate()?;
    let d = inputs.d.ok_or(Error::MissingInput("D"))?;
    let gamma = inputs.gamma;
    if !(gamma > 1.0) {
        return Err(Error::GammaOutOfRange { gamma, limit: 1.0 });
    }
    let (beta, target, error_level) = match inputs.beta {
        Some(beta) => (beta, inputs.eps, (gamma / beta - 1.0) * d + inputs.eps),
        None => {
            let beta = 1.0 - inputs.eps / (2.0 * gamma * d);
            (beta, 0.5 * inputs.eps, (gamma - 1.0) * d + inputs.eps)
        }
    };
    let (k, saturated) = log_count(inputs.eps0 / target, neg_log1m(1.0 - beta));
    Ok(ErrorLevelBound {
        lambda: 1.0 - beta / gamma,
        k,
        error_level,
        saturated,
    })
}

/// Restart-phase bound under an error bound with constant `µ`:
/// `λ_max = (µβ/4)/(1 + µβ/4)` and `k = ⌈ln(2/β)/ln(1/(1−λ_max))⌉`.
pub fn bound_leb(beta: f64, mu: f64) -> Result<LebBound> {
    if !(beta > 0.0 && beta < 1.0) {
        return Err(Error::invalid("beta", "must lie in (0, 1)"));
    }
    positive("mu", mu)?;
    let t = mu * beta / 4.0;
    let lambda_max = t / (1.0 + t);
    let (k, saturated) = log_count(2.0 / beta, neg_log1m(lambda_max));
    Ok(LebBound {
        lambda_max,
        k,
        saturated,
    })
}

/// Residual level `ε̄ = (D/β²)·(γ − 1)/(1 − β′)` reachable by GHAL when `γ > 1`.
pub fn bound_ghal_expansive_error(d: f64, gamma: f64, beta: f64, beta_prime: f64) -> Result<f64> {
    positive("D", d)?;
    if !(gamma > 1.0) {
        return Err(Error::GammaOutOfRange { gamma, limit: 1.0 });
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::invalid("beta", "must lie in (0, 1]"));
    }
    if !(0.0..1.0).contains(&beta_prime) {
        return Err(Error::invalid("beta_prime", "must lie in [0, 1)"));
    }
    Ok(d / (beta * beta) * (gamma - 1.0) / (1.0 - beta_prime))
}

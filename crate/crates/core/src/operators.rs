//! Benchmark operators and combinators.
//!
//! An [`OperatorSpec`] is an immutable description of a map `T: R^d → R^d`
//! together with the norm it is measured in and whatever is known about it
//! (a Lipschitz constant, the diameter of its domain). Specs compose; a
//! composite counts as a single operator when wrapped in a
//! [`CountedOperator`](crate::CountedOperator).

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::vector::{NormKind, RealVector};

/// Parity of the piecewise-slope scalar map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Parity {
    /// `f(−x) = f(x)`.
    #[default]
    Even,
    /// `f(−x) = −f(x)`.
    Odd,
}

/// A closed convex set used for projections and sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Region {
    /// The cube `[lo, hi]^d`.
    Box { lo: f64, hi: f64 },
    /// The centred Euclidean ball of the given radius.
    Ball { radius: f64 },
}

impl Region {
    pub fn unit_ball() -> Self {
        Region::Ball { radius: 1.0 }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Region::Box { lo, hi } if !(lo.is_finite() && hi.is_finite() && lo <= hi) => {
                Err(Error::invalid("region", "box needs finite lo <= hi"))
            }
            Region::Ball { radius } if !(radius.is_finite() && radius > 0.0) => {
                Err(Error::invalid("region", "ball radius must be positive"))
            }
            _ => Ok(()),
        }
    }

    /// Projects `x` onto the region in place.
    pub fn project(&self, x: &mut [f64]) {
        match *self {
            Region::Box { lo, hi } => x.iter_mut().for_each(|v| *v = v.clamp(lo, hi)),
            Region::Ball { radius } => {
                let n = NormKind::EuclideanL2.of(x);
                if n > radius {
                    let scale = radius / n;
                    x.iter_mut().for_each(|v| *v *= scale);
                }
            }
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        match *self {
            Region::Box { lo, hi } => x.iter().all(|v| (lo..=hi).contains(v)),
            Region::Ball { radius } => NormKind::EuclideanL2.of(x) <= radius,
        }
    }

    /// Diameter of the region in `R^dim` under `norm`.
    pub fn diameter(&self, dim: usize, norm: NormKind) -> f64 {
        match (*self, norm) {
            (Region::Box { lo, hi }, NormKind::SupLinf) => hi - lo,
            (Region::Box { lo, hi }, NormKind::EuclideanL2) => (hi - lo) * libm::sqrt(dim as f64),
            (Region::Ball { radius }, NormKind::EuclideanL2) => 2.0 * radius,
            // The largest ℓ∞ gap inside a Euclidean ball is attained on one axis.
            (Region::Ball { radius }, NormKind::SupLinf) => 2.0 * radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum OperatorKind {
    Identity,
    /// `x ↦ γ·x`; `γ = 0` is the zero operator.
    LinearScale { gamma: f64 },
    /// `x ↦ M·x` with `M` stored row-major.
    Linear { matrix: Vec<f64> },
    /// `x ↦ x + offset`.
    Shift { offset: Vec<f64> },
    /// Signed cyclic shift scaled by `γ`, first coordinate offset by `s`.
    /// With `literal` set, every coordinate `i ≥ 2` copies `γ·x_{d−1}`.
    RotationHard { gamma: f64, s: f64, literal: bool },
    /// Coordinatewise `γ·x` on `|x| ≤ 1−c`, unit slope outside.
    PiecewiseScale { gamma: f64, c: f64 },
    /// Coordinatewise slope `m_near` on `|x| ≤ 1`, `m_far` beyond.
    PiecewiseSlope {
        m_near: f64,
        m_far: f64,
        parity: Parity,
    },
    BallProjection { radius: f64 },
    BoxProjection { lo: f64, hi: f64 },
    /// `Proj_[−D/2, D/2]^d (x + exp(α·x/D))`.
    ExpShift { alpha: f64, diameter: f64 },
    /// `x ↦ T(x) − x`.
    Displacement(Box<OperatorSpec>),
    /// Applied right to left: the last part is innermost.
    Compose(Vec<OperatorSpec>),
    /// `x ↦ Proj_region(x − F(x))`.
    ProjectedForwardStep {
        field: Box<OperatorSpec>,
        region: Region,
    },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OperatorSpec {
    kind: OperatorKind,
    dim: usize,
    norm: NormKind,
    lipschitz: Option<f64>,
    diameter: Option<f64>,
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::invalid("d", "dimension must be positive"))
    } else {
        Ok(())
    }
}

fn finite(name: &'static str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::invalid(name, "must be finite"))
    }
}

impl OperatorSpec {
    fn with_kind(kind: OperatorKind, dim: usize, lipschitz: Option<f64>) -> Self {
        OperatorSpec {
            kind,
            dim,
            norm: NormKind::EuclideanL2,
            lipschitz,
            diameter: None,
        }
    }

    pub fn identity(d: usize) -> Result<Self> {
        check_dim(d)?;
        Ok(Self::with_kind(OperatorKind::Identity, d, Some(1.0)))
    }

    pub fn zero(d: usize) -> Result<Self> {
        Self::linear_scale(d, 0.0)
    }

    pub fn linear_scale(d: usize, gamma: f64) -> Result<Self> {
        check_dim(d)?;
        let gamma = finite("gamma", gamma)?;
        Ok(Self::with_kind(
            OperatorKind::LinearScale { gamma },
            d,
            Some(gamma.abs()),
        ))
    }

    /// General linear map; `matrix` is `d × d`, row-major.
    pub fn linear(d: usize, matrix: Vec<f64>) -> Result<Self> {
        check_dim(d)?;
        if matrix.len() != d * d {
            return Err(Error::DimensionMismatch {
                expected: d * d,
                found: matrix.len(),
            });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("matrix", "entries must be finite"));
        }
        Ok(Self::with_kind(OperatorKind::Linear { matrix }, d, None))
    }

    pub fn shift(offset: RealVector) -> Self {
        let d = offset.dim();
        Self::with_kind(
            OperatorKind::Shift {
                offset: offset.into_vec(),
            },
            d,
            Some(1.0),
        )
    }

    /// The hard rotation-like instance. Coordinate 1 is `s − γ·x_d`, coordinate
    /// `i ≥ 2` is `γ·x_{i−1}`.
    pub fn rotation_hard(d: usize, gamma: f64, s: f64) -> Result<Self> {
        Self::rotation(d, gamma, s, false)
    }

    /// Same instance with the shift chosen by the usual rule: `s = 2` for
    /// `γ < 1` and `s = 2/√d` for `γ = 1`.
    pub fn rotation_hard_default_shift(d: usize, gamma: f64) -> Result<Self> {
        Self::rotation(d, gamma, default_rotation_shift(d, gamma), false)
    }

    /// Variant where every coordinate `i ≥ 2` equals `γ·x_{d−1}`. Kept for
    /// comparison with [`OperatorSpec::rotation_hard`].
    pub fn rotation_hard_literal(d: usize, gamma: f64, s: f64) -> Result<Self> {
        Self::rotation(d, gamma, s, true)
    }

    fn rotation(d: usize, gamma: f64, s: f64, literal: bool) -> Result<Self> {
        if d < 2 {
            return Err(Error::invalid("d", "rotation instance needs d >= 2"));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::invalid("gamma", "must lie in (0, 1]"));
        }
        let s = finite("s", s)?;
        let lipschitz = if literal {
            gamma * libm::sqrt((d - 1) as f64)
        } else {
            gamma
        };
        Ok(Self::with_kind(
            OperatorKind::RotationHard { gamma, s, literal },
            d,
            Some(lipschitz),
        ))
    }

    pub fn piecewise_scale(d: usize, gamma: f64, c: f64) -> Result<Self> {
        check_dim(d)?;
        if !(gamma > 1.0 && gamma.is_finite()) {
            return Err(Error::invalid(
                "gamma",
                "piecewise scale needs gamma > 1; use linear_scale otherwise",
            ));
        }
        if !(0.0..=1.0).contains(&c) {
            return Err(Error::invalid("c", "must lie in [0, 1]"));
        }
        Ok(Self::with_kind(
            OperatorKind::PiecewiseScale { gamma, c },
            d,
            Some(gamma),
        ))
    }

    pub fn piecewise_slope(d: usize, m_near: f64, m_far: f64, parity: Parity) -> Result<Self> {
        check_dim(d)?;
        for (name, m) in [("m_near", m_near), ("m_far", m_far)] {
            if !(m > 0.0 && m <= 1.0) {
                return Err(Error::invalid(name, "slope magnitude must lie in (0, 1]"));
            }
        }
        Ok(Self::with_kind(
            OperatorKind::PiecewiseSlope {
                m_near,
                m_far,
                parity,
            },
            d,
            Some(f64::max(m_near, m_far)),
        ))
    }

    /// Projection onto the centred unit Euclidean ball.
    pub fn ball_projection(d: usize) -> Result<Self> {
        check_dim(d)?;
        let mut spec = Self::with_kind(OperatorKind::BallProjection { radius: 1.0 }, d, Some(1.0));
        spec.diameter = Some(2.0);
        Ok(spec)
    }

    pub fn box_projection(d: usize, lo: f64, hi: f64) -> Result<Self> {
        check_dim(d)?;
        let region = Region::Box { lo, hi };
        region.validate()?;
        let mut spec = Self::with_kind(OperatorKind::BoxProjection { lo, hi }, d, Some(1.0));
        spec.diameter = Some(region.diameter(d, spec.norm));
        Ok(spec)
    }

    /// `Proj_C(x + exp(α·x/D))` on `C = [−D/2, D/2]^d`, measured in ℓ∞.
    pub fn exp_shift(d: usize, alpha: f64, diameter: f64) -> Result<Self> {
        check_dim(d)?;
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::invalid("alpha", "must lie in [0, 1)"));
        }
        if !(diameter > 0.0 && diameter.is_finite()) {
            return Err(Error::invalid("D", "must be positive"));
        }
        Ok(OperatorSpec {
            kind: OperatorKind::ExpShift { alpha, diameter },
            dim: d,
            norm: NormKind::SupLinf,
            lipschitz: None,
            diameter: Some(diameter),
        })
    }

    /// `x ↦ T(x) − x`.
    pub fn displacement(t: OperatorSpec) -> Self {
        let (dim, norm) = (t.dim, t.norm);
        let lipschitz = t.lipschitz.map(|g| g + 1.0);
        OperatorSpec {
            kind: OperatorKind::Displacement(Box::new(t)),
            dim,
            norm,
            lipschitz,
            diameter: None,
        }
    }

    /// Composition `parts[0] ∘ parts[1] ∘ … ∘ parts[n−1]`.
    pub fn compose(parts: Vec<OperatorSpec>) -> Result<Self> {
        let first = parts
            .first()
            .ok_or(Error::invalid("parts", "composition needs at least one part"))?;
        let (dim, norm, diameter) = (first.dim, first.norm, first.diameter);
        if let Some(bad) = parts.iter().find(|p| p.dim != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim,
            });
        }
        let lipschitz = parts
            .iter()
            .try_fold(1.0, |acc, p| p.lipschitz.map(|g| acc * g));
        Ok(OperatorSpec {
            kind: OperatorKind::Compose(parts),
            dim,
            norm,
            lipschitz,
            diameter,
        })
    }

    /// `x ↦ Proj_region(x − F(x))`, the natural-residual map of `F`.
    pub fn projected_forward_step(field: OperatorSpec, region: Region) -> Result<Self> {
        region.validate()?;
        let (dim, norm) = (field.dim, field.norm);
        Ok(OperatorSpec {
            kind: OperatorKind::ProjectedForwardStep {
                field: Box::new(field),
                region,
            },
            dim,
            norm,
            lipschitz: None,
            diameter: Some(region.diameter(dim, norm)),
        })
    }

    pub fn with_norm(mut self, norm: NormKind) -> Self {
        self.norm = norm;
        self
    }

    /// Overrides the declared Lipschitz constant.
    pub fn with_lipschitz(mut self, lipschitz: Option<f64>) -> Self {
        self.lipschitz = lipschitz;
        self
    }

    pub fn with_diameter(mut self, diameter: Option<f64>) -> Self {
        self.diameter = diameter;
        self
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn norm(&self) -> NormKind {
        self.norm
    }

    pub fn lipschitz(&self) -> Option<f64> {
        self.lipschitz
    }

    pub fn diameter(&self) -> Option<f64> {
        self.diameter
    }

    /// Closed-form fixed point, where one is known.
    pub fn known_fixed_point(&self) -> Option<RealVector> {
        match self.kind {
            OperatorKind::RotationHard {
                gamma,
                s,
                literal: false,
            } => {
                let x1 = s / (1.0 + libm::pow(gamma, self.dim as f64));
                let mut coords = Vec::with_capacity(self.dim);
                let mut c = x1;
                for _ in 0..self.dim {
                    coords.push(c);
                    c *= gamma;
                }
                RealVector::new(coords).ok()
            }
            OperatorKind::LinearScale { gamma } if gamma != 1.0 => RealVector::zeros(self.dim).ok(),
            _ => None,
        }
    }

    /// Evaluates the operator without any accounting. Solvers go through
    /// [`CountedOperator`](crate::CountedOperator) instead.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.dim);
        match &self.kind {
            OperatorKind::Identity => x.to_vec(),
            OperatorKind::LinearScale { gamma } => x.iter().map(|v| gamma * v).collect(),
            OperatorKind::Linear { matrix } => matrix
                .chunks_exact(self.dim)
                .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect(),
            OperatorKind::Shift { offset } => x.iter().zip(offset).map(|(a, b)| a + b).collect(),
            &OperatorKind::RotationHard { gamma, s, literal } => {
                let d = self.dim;
                let mut out = Vec::with_capacity(d);
                out.push(s - gamma * x[d - 1]);
                if literal {
                    out.extend(core::iter::repeat_n(gamma * x[d - 2], d - 1));
                } else {
                    out.extend(x[..d - 1].iter().map(|v| gamma * v));
                }
                out
            }
            &OperatorKind::PiecewiseScale { gamma, c } => {
                let knot = 1.0 - c;
                let jump = (gamma - 1.0) * knot;
                x.iter()
                    .map(|&v| {
                        if v.abs() <= knot {
                            gamma * v
                        } else {
                            v + jump.copysign(v)
                        }
                    })
                    .collect()
            }
            &OperatorKind::PiecewiseSlope {
                m_near,
                m_far,
                parity,
            } => x
                .iter()
                .map(|&v| {
                    let t = v.abs();
                    let g = if t <= 1.0 {
                        m_near * t
                    } else {
                        m_near + m_far * (t - 1.0)
                    };
                    match parity {
                        Parity::Even => g,
                        Parity::Odd => g.copysign(v),
                    }
                })
                .collect(),
            &OperatorKind::BallProjection { radius } => {
                let mut out = x.to_vec();
                Region::Ball { radius }.project(&mut out);
                out
            }
            &OperatorKind::BoxProjection { lo, hi } => x.iter().map(|v| v.clamp(lo, hi)).collect(),
            &OperatorKind::ExpShift { alpha, diameter } => {
                let half = diameter / 2.0;
                x.iter()
                    .map(|&v| (v + libm::exp(alpha * v / diameter)).clamp(-half, half))
                    .collect()
            }
            OperatorKind::Displacement(t) => t
                .apply(x)
                .into_iter()
                .zip(x)
                .map(|(tx, v)| tx - v)
                .collect(),
            OperatorKind::Compose(parts) => {
                let mut y = x.to_vec();
                for part in parts.iter().rev() {
                    y = part.apply(&y);
                }
                y
            }
            OperatorKind::ProjectedForwardStep { field, region } => {
                let mut y: Vec<f64> = field
                    .apply(x)
                    .into_iter()
                    .zip(x)
                    .map(|(f, v)| v - f)
                    .collect();
                region.project(&mut y);
                y
            }
        }
    }

    /// Short human-readable description, stable across runs. Contains no
    /// commas so it can sit in a CSV cell unquoted.
    pub fn label(&self) -> String {
        match &self.kind {
            OperatorKind::Identity => format!("identity{{d={}}}", self.dim),
            OperatorKind::LinearScale { gamma } => {
                format!("linear_scale{{d={};gamma={}}}", self.dim, gamma)
            }
            OperatorKind::Linear { .. } => format!("linear{{d={}}}", self.dim),
            OperatorKind::Shift { .. } => format!("shift{{d={}}}", self.dim),
            OperatorKind::RotationHard { gamma, s, literal } => format!(
                "{}{{d={};gamma={};s={}}}",
                if *literal {
                    "rotation_hard_literal"
                } else {
                    "rotation_hard"
                },
                self.dim,
                gamma,
                s
            ),
            OperatorKind::PiecewiseScale { gamma, c } => {
                format!("piecewise_scale{{d={};gamma={};c={}}}", self.dim, gamma, c)
            }
            OperatorKind::PiecewiseSlope {
                m_near,
                m_far,
                parity,
            } => format!(
                "piecewise_slope{{d={};m_near={};m_far={};{}}}",
                self.dim,
                m_near,
                m_far,
                match parity {
                    Parity::Even => "even",
                    Parity::Odd => "odd",
                }
            ),
            OperatorKind::BallProjection { radius } => {
                format!("ball_projection{{d={};r={}}}", self.dim, radius)
            }
            OperatorKind::BoxProjection { lo, hi } => {
                format!("box_projection{{d={};lo={};hi={}}}", self.dim, lo, hi)
            }
            OperatorKind::ExpShift { alpha, diameter } => {
                format!("exp_shift{{d={};alpha={};D={}}}", self.dim, alpha, diameter)
            }
            OperatorKind::Displacement(t) => format!("displacement[{}]", t.label()),
            OperatorKind::Compose(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.label()).collect();
                format!("compose[{}]", inner.join(" o "))
            }
            OperatorKind::ProjectedForwardStep { field, region } => {
                let r = match region {
                    Region::Box { lo, hi } => format!("box[{};{}]", lo, hi),
                    Region::Ball { radius } => format!("ball[{}]", radius),
                };
                format!("projected_forward_step[{};{}]", field.label(), r)
            }
        }
    }
}

/// `s = 2` for contractive instances, `s = 2/√d` for the nonexpansive one.
pub fn default_rotation_shift(d: usize, gamma: f64) -> f64 {
    if gamma < 1.0 {
        2.0
    } else {
        2.0 / libm::sqrt(d as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use approx::assert_abs_diff_eq;

    fn scalar(spec: &OperatorSpec, x: f64) -> f64 {
        spec.apply(&[x])[0]
    }

    #[test]
    fn rotation_substitution_and_fixed_point() {
        let s = 2.0 / libm::sqrt(3.0);
        let t = OperatorSpec::rotation_hard(3, 1.0, s).unwrap();
        assert_eq!(t.apply(&[0.0, 0.0, 0.0]), vec![s, 0.0, 0.0]);
        let xs = t.known_fixed_point().unwrap();
        let third = 1.0 / libm::sqrt(3.0);
        for i in 0..3 {
            assert_abs_diff_eq!(xs[i], third, epsilon = 1e-15);
        }
        let tx = t.apply(xs.as_slice());
        assert_abs_diff_eq!(NormKind::EuclideanL2.distance(&tx, xs.as_slice()), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn rotation_rejects_small_dimension() {
        assert!(OperatorSpec::rotation_hard(1, 1.0, 1.0).is_err());
        assert!(OperatorSpec::rotation_hard(4, 1.5, 1.0).is_err());
    }

    #[test]
    fn rotation_default_shift_rule() {
        let t = OperatorSpec::rotation_hard_default_shift(500, 1.0).unwrap();
        match t.kind() {
            OperatorKind::RotationHard { s, .. } => assert_eq!(*s, 2.0 / libm::sqrt(500.0)),
            _ => unreachable!(),
        }
        assert_eq!(default_rotation_shift(500, 5.0 / 6.0), 2.0);
    }

    #[test]
    fn rotation_literal_copies_second_to_last() {
        let t = OperatorSpec::rotation_hard_literal(4, 0.5, 1.0).unwrap();
        assert_eq!(t.apply(&[1.0, 2.0, 3.0, 4.0]), vec![-1.0, 1.5, 1.5, 1.5]);
    }

    #[test]
    fn piecewise_scale_branches() {
        let s = OperatorSpec::piecewise_scale(1, 1.01, 0.5).unwrap();
        assert_abs_diff_eq!(scalar(&s, 0.4), 0.404, epsilon = 1e-15);
        assert_abs_diff_eq!(scalar(&s, 0.8), 0.805, epsilon = 1e-15);
        assert_abs_diff_eq!(scalar(&s, -0.8), -0.805, epsilon = 1e-15);
        for knot in [0.5, -0.5] {
            let inside = scalar(&s, knot);
            let outside = scalar(&s, knot + 1e-13f64.copysign(knot));
            assert!((inside - outside).abs() <= 1e-12 + 1.01 * 1e-13);
        }
        assert!(OperatorSpec::piecewise_scale(1, 1.0, 0.5).is_err());
    }

    #[test]
    fn piecewise_slope_branches() {
        let f = OperatorSpec::piecewise_slope(1, 1.0, 0.25, Parity::Even).unwrap();
        assert_eq!(scalar(&f, 0.5), 0.5);
        assert_eq!(scalar(&f, 2.0), 1.25);
        let g = OperatorSpec::piecewise_slope(1, 0.5, 1.0, Parity::Even).unwrap();
        assert_eq!(scalar(&g, -0.5), 0.25);
        let h = OperatorSpec::piecewise_slope(1, 0.5, 1.0, Parity::Odd).unwrap();
        assert_eq!(scalar(&h, -0.5), -0.25);
        assert_eq!(scalar(&f, 0.0), 0.0);
    }

    #[test]
    fn ball_projection_cases() {
        let p = OperatorSpec::ball_projection(2).unwrap();
        assert_eq!(p.apply(&[0.3, 0.4]), vec![0.3, 0.4]);
        let q = p.apply(&[3.0, 4.0]);
        assert_abs_diff_eq!(q[0], 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(q[1], 0.8, epsilon = 1e-15);
        assert_eq!(p.apply(&[0.0, 0.0]), vec![0.0, 0.0]);
    }

    #[test]
    fn exp_shift_cases() {
        let t = OperatorSpec::exp_shift(1, 0.4, 2.0).unwrap();
        assert_eq!(scalar(&t, 0.0), 1.0);
        // Frozen from 50-digit evaluation of −1 + e^{−0.2}.
        assert_abs_diff_eq!(scalar(&t, -1.0), -0.181_269_246_922_018_14, epsilon = 1e-15);
        assert!(scalar(&t, -1.0).abs() <= 1.0);
        let flat = OperatorSpec::exp_shift(1, 0.0, 2.0).unwrap();
        assert_eq!(scalar(&flat, -0.5), 0.5);
        assert_eq!(t.norm(), NormKind::SupLinf);
        assert_eq!(t.diameter(), Some(2.0));
    }

    #[test]
    fn compose_order_and_dims() {
        let id = OperatorSpec::identity(3).unwrap();
        let c = OperatorSpec::compose(vec![id.clone(), id.clone()]).unwrap();
        assert_eq!(c.apply(&[1.0, 2.0, 3.0]), vec![1.0, 2.0, 3.0]);
        let half = OperatorSpec::linear_scale(1, 0.5).unwrap();
        let q = OperatorSpec::compose(vec![half.clone(), half]).unwrap();
        assert_eq!(q.apply(&[4.0]), vec![1.0]);
        assert_eq!(q.lipschitz(), Some(0.25));
        // Rightmost part is applied first.
        let shift = OperatorSpec::shift(RealVector::new(vec![1.0]).unwrap());
        let double = OperatorSpec::linear_scale(1, 2.0).unwrap();
        let c = OperatorSpec::compose(vec![double, shift]).unwrap();
        assert_eq!(c.apply(&[0.0]), vec![2.0]);
        let bad = OperatorSpec::compose(vec![id, OperatorSpec::identity(2).unwrap()]);
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn projected_forward_step_cases() {
        let ball = Region::unit_ball();
        let t = OperatorSpec::projected_forward_step(OperatorSpec::zero(2).unwrap(), ball).unwrap();
        assert_eq!(t.apply(&[0.2, -0.1]), vec![0.2, -0.1]);
        let t = OperatorSpec::projected_forward_step(OperatorSpec::identity(2).unwrap(), ball).unwrap();
        assert_eq!(t.apply(&[0.7, -3.0]), vec![0.0, 0.0]);
        let a = RealVector::new(vec![0.25, -0.5]).unwrap();
        let minus_a = RealVector::new(vec![-0.25, 0.5]).unwrap();
        let t = OperatorSpec::projected_forward_step(OperatorSpec::shift(minus_a), ball).unwrap();
        let ta = t.apply(a.as_slice());
        assert_eq!(NormKind::EuclideanL2.distance(&ta, a.as_slice()), 0.0);
    }

    #[test]
    fn labels_have_no_commas() {
        let t = OperatorSpec::compose(vec![
            OperatorSpec::ball_projection(4).unwrap(),
            OperatorSpec::rotation_hard_default_shift(4, 1.0).unwrap(),
            OperatorSpec::piecewise_scale(4, 1.01, 0.5).unwrap(),
        ])
        .unwrap();
        assert!(!t.label().contains(','));
        assert_eq!(t.diameter(), Some(2.0));
    }
}

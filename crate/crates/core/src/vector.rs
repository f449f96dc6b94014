use alloc::vec::Vec;
use core::ops::Index;

use crate::error::{Error, Result};

/// Which norm measures distances in a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum NormKind {
    #[default]
    EuclideanL2,
    SupLinf,
}

impl NormKind {
    /// Norm of a raw coordinate slice.
    pub fn of(self, v: &[f64]) -> f64 {
        match self {
            NormKind::EuclideanL2 => libm::sqrt(v.iter().map(|x| x * x).sum::<f64>()),
            NormKind::SupLinf => v.iter().fold(0.0, |m, x| f64::max(m, x.abs())),
        }
    }

    /// `‖a − b‖` without allocating.
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        let diffs = a.iter().zip(b).map(|(x, y)| x - y);
        match self {
            NormKind::EuclideanL2 => libm::sqrt(diffs.map(|d| d * d).sum::<f64>()),
            NormKind::SupLinf => diffs.fold(0.0, |m, d| f64::max(m, d.abs())),
        }
    }
}

/// A dense point of `R^d` with `d ≥ 1` and finite coordinates.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(index) = coords.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index });
        }
        Ok(RealVector(coords))
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::filled(dim, 0.0)
    }

    pub fn filled(dim: usize, value: f64) -> Result<Self> {
        Self::new(alloc::vec![value; dim])
    }

    /// Wraps values computed during an iteration; overflow surfaces as
    /// [`Error::NonFinite`].
    pub(crate) fn from_iterate(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().all(|x| x.is_finite()) {
            Ok(RealVector(coords))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self, kind: NormKind) -> f64 {
        kind.of(&self.0)
    }

    pub fn distance(&self, other: &RealVector, kind: NormKind) -> f64 {
        kind.distance(&self.0, &other.0)
    }

    pub fn dot(&self, other: &RealVector) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// `self − other`, coordinatewise.
    pub fn sub(&self, other: &RealVector) -> Result<RealVector> {
        self.check_dim(other.dim())?;
        RealVector::from_iterate(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }
}

impl Index<usize> for RealVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl AsRef<[f64]> for RealVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

pub fn norm(v: &RealVector, kind: NormKind) -> f64 {
    v.norm(kind)
}

/// `λ·a + (1−λ)·b`, the anchored averaging step of Halpern-type iterations.
pub fn combine(a: &RealVector, b: &RealVector, lambda: f64) -> Result<RealVector> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::invalid("lambda", "must lie in [0, 1]"));
    }
    a.check_dim(b.dim())?;
    let mu = 1.0 - lambda;
    RealVector::from_iterate(
        a.0.iter()
            .zip(&b.0)
            .map(|(x, y)| lambda * x + mu * y)
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn v(xs: &[f64]) -> RealVector {
        RealVector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn norms() {
        assert_eq!(norm(&v(&[3.0, 4.0]), NormKind::EuclideanL2), 5.0);
        assert_eq!(norm(&v(&[3.0, -4.0]), NormKind::SupLinf), 4.0);
        assert_eq!(norm(&v(&[0.0, 0.0, 0.0]), NormKind::EuclideanL2), 0.0);
    }

    #[test]
    fn construction_rejects_bad_input() {
        assert_eq!(RealVector::new(vec![]), Err(Error::EmptyVector));
        assert_eq!(
            RealVector::new(vec![1.0, f64::NAN]),
            Err(Error::NonFiniteCoordinate { index: 1 })
        );
        assert!(RealVector::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn combine_endpoints_and_midpoint() {
        let a = v(&[1.0, -2.0]);
        let b = v(&[0.5, 3.0]);
        assert_eq!(combine(&a, &b, 1.0).unwrap(), a);
        assert_eq!(combine(&a, &b, 0.0).unwrap(), b);
        assert_eq!(
            combine(&v(&[1.0, 0.0]), &v(&[0.0, 1.0]), 0.5).unwrap(),
            v(&[0.5, 0.5])
        );
    }

    #[test]
    fn combine_errors() {
        assert_eq!(
            combine(&v(&[1.0]), &v(&[1.0, 2.0]), 0.5),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
        assert!(combine(&v(&[1.0]), &v(&[2.0]), 1.5).is_err());
    }
}

use crate::error::Result;
use crate::operators::OperatorSpec;
use crate::vector::{NormKind, RealVector};

/// `‖T(x) − x‖` under the operator's norm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Residual(f64);

impl Residual {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Evaluation oracle for an operator. Every call to [`evaluate`] is one
/// query; nothing else touches the counter.
///
/// [`evaluate`]: CountedOperator::evaluate
#[derive(Debug, Clone)]
pub struct CountedOperator {
    spec: OperatorSpec,
    queries: u64,
}

impl CountedOperator {
    pub fn new(spec: OperatorSpec) -> Self {
        CountedOperator { spec, queries: 0 }
    }

    pub fn spec(&self) -> &OperatorSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim()
    }

    pub fn norm(&self) -> NormKind {
        self.spec.norm()
    }

    pub fn queries(&self) -> u64 {
        self.queries
    }

    /// Returns `T(x)`. The counter is bumped before the output is checked, so
    /// an evaluation that overflows still counts.
    pub fn evaluate(&mut self, x: &RealVector) -> Result<RealVector> {
        x.check_dim(self.spec.dim())?;
        self.queries += 1;
        RealVector::from_iterate(self.spec.apply(x.as_slice()))
    }

    /// Residual of `x` given the cached `tx = T(x)`; never queries.
    pub fn residual(&self, x: &RealVector, tx: &RealVector) -> Result<Residual> {
        let d = self.spec.dim();
        x.check_dim(d)?;
        tx.check_dim(d)?;
        Ok(Residual(x.distance(tx, self.norm())))
    }
}

impl From<OperatorSpec> for CountedOperator {
    fn from(spec: OperatorSpec) -> Self {
        CountedOperator::new(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Error;

    fn v(xs: &[f64]) -> RealVector {
        RealVector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn evaluate_counts_each_query() {
        let mut id = CountedOperator::new(OperatorSpec::identity(2).unwrap());
        let x = v(&[1.0, -3.0]);
        assert_eq!(id.evaluate(&x).unwrap(), x);
        assert_eq!(id.queries(), 1);

        let mut half = CountedOperator::new(OperatorSpec::linear_scale(2, 0.5).unwrap());
        let x = v(&[2.0, -2.0]);
        let a = half.evaluate(&x).unwrap();
        let b = half.evaluate(&x).unwrap();
        assert_eq!(a, v(&[1.0, -1.0]));
        assert_eq!(a, b);
        assert_eq!(half.queries(), 2);
    }

    #[test]
    fn evaluate_rejects_wrong_dimension() {
        let mut id = CountedOperator::new(OperatorSpec::identity(2).unwrap());
        assert!(matches!(
            id.evaluate(&v(&[1.0])),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(id.queries(), 0);
    }

    #[test]
    fn overflow_is_reported() {
        let mut big = CountedOperator::new(OperatorSpec::linear_scale(1, 1e300).unwrap());
        assert_eq!(big.evaluate(&v(&[1e300])), Err(Error::NonFinite));
        assert_eq!(big.queries(), 1);
    }

    #[test]
    fn residual_uses_cached_value() {
        let half = CountedOperator::new(OperatorSpec::linear_scale(2, 0.5).unwrap());
        let x = v(&[2.0, 0.0]);
        assert_eq!(half.residual(&x, &x).unwrap().value(), 0.0);
        assert_eq!(half.residual(&x, &v(&[1.0, 0.0])).unwrap().value(), 1.0);
        let sup = CountedOperator::new(
            OperatorSpec::identity(2)
                .unwrap()
                .with_norm(NormKind::SupLinf),
        );
        let r = sup.residual(&v(&[0.0, 0.0]), &v(&[0.3, -0.7])).unwrap();
        assert_eq!(r.value(), 0.7);
        assert_eq!(half.queries(), 0);
        assert!(half.residual(&x, &v(&[1.0])).is_err());
    }
}

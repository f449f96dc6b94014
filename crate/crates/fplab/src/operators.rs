//! Named composite operators used by the figure presets.

use fplab_core::operators::default_rotation_shift;
use fplab_core::{OperatorSpec, Parity, Result};

/// `R₁ ∘ S`, a nonexpansive rotation after a coordinatewise piecewise slope.
pub fn rotation_slope(
    d: usize,
    m_near: f64,
    m_far: f64,
    s: Option<f64>,
    parity: Parity,
) -> Result<OperatorSpec> {
    let s = s.unwrap_or_else(|| default_rotation_shift(d, 1.0));
    OperatorSpec::compose(vec![
        OperatorSpec::rotation_hard(d, 1.0, s)?,
        OperatorSpec::piecewise_slope(d, m_near, m_far, parity)?,
    ])
}

/// `P_B ∘ R₁ ∘ S`, a mildly expansive map of the unit ball into itself.
pub fn projected_rotation_scale(d: usize, gamma: f64, c: f64, s: Option<f64>) -> Result<OperatorSpec> {
    let s = s.unwrap_or_else(|| default_rotation_shift(d, 1.0));
    OperatorSpec::compose(vec![
        OperatorSpec::ball_projection(d)?,
        OperatorSpec::rotation_hard(d, 1.0, s)?,
        OperatorSpec::piecewise_scale(d, gamma, c)?,
    ])
}

//! Sampled property checkers and closed-form iteration-count bounds.

mod bounds;
mod checks;

pub use bounds::{
    bound_corollary_mild, bound_fixed_step, bound_ghal_expansive_error, bound_leb, bound_mild,
    BoundInputs, ErrorLevelBound, LebBound, StepBound,
};
pub use checks::{
    check_f_condition, check_gradual_resolvent_condition, check_gradually_expansive,
    check_hypomonotone, check_increment_contraction, estimate_lipschitz, f_condition_margin,
    gradual_expansion_margin, gradual_resolvent_margin, hypomonotone_margin, increment_margin,
    lipschitz_ratio, CheckReport, Margin, DEFAULT_PAIRS, INNER_PRODUCT_TOL, MIN_SEPARATION,
    RELATIVE_TOL,
};

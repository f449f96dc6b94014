use approx::assert_relative_eq;
use fplab_core::solvers::*;
use fplab_core::{CountedOperator, NormKind, OperatorSpec, RealVector};
use proptest::prelude::*;

const L2: NormKind = NormKind::EuclideanL2;

fn v(xs: &[f64]) -> RealVector {
    RealVector::new(xs.to_vec()).unwrap()
}

fn counted(spec: OperatorSpec) -> CountedOperator {
    CountedOperator::new(spec)
}

/// Least-squares slope of log(residual) against log(queries) on `[lo, hi]`.
fn loglog_slope(trace: &IterationTrace, lo: u64, hi: u64) -> f64 {
    let pts: Vec<(f64, f64)> = trace
        .iter()
        .filter(|r| r.queries >= lo && r.queries <= hi && r.residual > 0.0)
        .map(|r| ((r.queries as f64).ln(), r.residual.ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn rotation(d: usize, gamma: f64) -> OperatorSpec {
    OperatorSpec::rotation_hard_default_shift(d, gamma).unwrap()
}

#[test]
fn picard_geometric_decay() {
    let mut op = counted(OperatorSpec::linear_scale(1, 0.5).unwrap());
    let r = picard(&mut op, &v(&[1.0]), &SolverConfig::new(1e-3, 1000)).unwrap();
    assert_eq!(r.termination, Termination::TargetReached);
    for (k, rec) in r.trace.iter().enumerate() {
        assert_eq!(rec.residual, 0.5f64.powi(k as i32 + 1));
    }
    assert_eq!(r.trace.len(), 10);
    assert_eq!(r.final_residual, 0.5f64.powi(10));
}

#[test]
fn picard_identity_one_query() {
    let mut op = counted(OperatorSpec::identity(3).unwrap());
    let r = picard(&mut op, &v(&[1.0, 2.0, 3.0]), &SolverConfig::new(1e-12, 10)).unwrap();
    assert_eq!((r.total_queries, r.final_residual), (1, 0.0));
}

#[test]
fn picard_stagnates_on_nonexpansive_rotation() {
    let mut op = counted(rotation(500, 1.0));
    let r = picard(&mut op, &RealVector::zeros(500).unwrap(), &SolverConfig::new(1e-8, 10_000)).unwrap();
    assert_eq!(r.termination, Termination::BudgetExhausted);
    let first = r.trace.records[0].residual;
    assert!(r.trace.iter().all(|rec| rec.residual > 0.1 * first));
}

#[test]
fn halpern_on_zero_map() {
    let mut op = counted(OperatorSpec::zero(1).unwrap());
    let r = halpern_classic(&mut op, &v(&[1.0]), &SolverConfig::new(1e-3, 5000)).unwrap();
    for (k, rec) in r.trace.iter().enumerate() {
        assert_relative_eq!(rec.residual, 1.0 / (k as f64 + 1.0), max_relative = 1e-14);
        assert_relative_eq!(rec.lambda_current, 1.0 / (k as f64 + 1.0), max_relative = 1e-15);
    }
    assert_eq!(r.termination, Termination::TargetReached);
}

#[test]
fn halpern_identity_stays_put() {
    let mut op = counted(OperatorSpec::identity(2).unwrap());
    let x0 = v(&[0.3, -0.7]);
    let r = halpern_classic(&mut op, &x0, &SolverConfig::new(1e-12, 10)).unwrap();
    assert_eq!(r.final_point, x0);
    assert_eq!(r.final_residual, 0.0);
}

#[test]
fn halpern_sublinear_on_rotation() {
    let mut op = counted(rotation(500, 1.0));
    let r = halpern_classic(&mut op, &RealVector::zeros(500).unwrap(), &SolverConfig::new(1e-8, 10_000))
        .unwrap();
    // Iterates are Cesàro averages of the orbit, which has period 2d, so the
    // fit stops short of the exact collapse at 1000 queries.
    let slope = loglog_slope(&r.trace, 100, 900);
    assert!((-1.5..=-0.7).contains(&slope), "slope {slope}");
}

#[test]
fn fixhal_first_steps_and_limit() {
    let spec = OperatorSpec::linear_scale(1, 0.5).unwrap();
    let mut op = counted(spec.clone());
    let pts: Vec<f64> = FixedStepIterates::new(&mut op, v(&[1.0]), 0.5)
        .unwrap()
        .take(200)
        .map(|it| it.unwrap().point[0])
        .collect();
    assert_eq!(pts[1], 0.75);
    assert_eq!(pts[2], 0.6875);
    assert!((pts[199] - 2.0 / 3.0).abs() <= 1e-10);

    let mut op = counted(spec);
    let r = fixhal(&mut op, &v(&[1.0]), 0.5, &SolverConfig::new(0.0, 200)).unwrap();
    assert_eq!(r.termination, Termination::BudgetExhausted);
    // The fixed point of the anchored map has residual |2/3 − 1/3|.
    assert!((r.final_residual - 1.0 / 3.0).abs() <= 1e-10);
}

#[test]
fn restarted_halves_each_phase() {
    let mut op = counted(OperatorSpec::linear_scale(1, 0.5).unwrap());
    let cfg = SolverConfig::new(1e-9, 10_000).with_lambda(0.25);
    let r = fixhal_restarted(&mut op, &v(&[1.0]), &cfg).unwrap();
    assert_eq!(r.termination, Termination::TargetReached);
    let recs = &r.trace.records;
    let mut phase_start = recs[0].residual;
    for w in recs.windows(2) {
        if w[1].phase != w[0].phase {
            assert_eq!(w[1].phase, w[0].phase + 1);
            assert!(w[0].residual <= 0.5 * phase_start);
            phase_start = w[0].residual;
        }
    }
    assert!(r.events.restarts >= 20);
}

#[test]
fn restarted_identity_one_query() {
    let mut op = counted(OperatorSpec::identity(2).unwrap());
    let r = fixhal_restarted(&mut op, &v(&[1.0, 1.0]), &SolverConfig::new(0.0, 10)).unwrap();
    assert_eq!((r.total_queries, r.termination), (1, Termination::TargetReached));
}

#[test]
fn restarted_linear_on_contractive_rotation() {
    let x0 = RealVector::zeros(500).unwrap();
    let cfg = SolverConfig::new(1e-8, 10_000);
    let r = fixhal_restarted(&mut counted(rotation(500, 5.0 / 6.0)), &x0, &cfg).unwrap();
    let p = picard(&mut counted(rotation(500, 5.0 / 6.0)), &x0, &cfg).unwrap();
    assert_eq!(r.termination, Termination::TargetReached);
    assert!(r.total_queries <= 2 * p.total_queries);
}

#[test]
fn restarted_mu_rule() {
    let mut op = counted(OperatorSpec::linear_scale(1, 0.5).unwrap());
    let r = fixhal_restarted(&mut op, &v(&[1.0]), &SolverConfig::new(1e-6, 1000).with_mu(1.0)).unwrap();
    assert_relative_eq!(r.trace.records[0].lambda_current, 1.0 / 9.0, max_relative = 1e-15);
}

#[test]
fn ghal_identity() {
    let mut op = counted(OperatorSpec::identity(2).unwrap());
    let r = ghal(&mut op, &v(&[1.0, 2.0]), &SolverConfig::new(1e-8, 100).with_diameter(1.0)).unwrap();
    assert_eq!((r.total_queries, r.termination), (1, Termination::TargetReached));
}

#[test]
fn ghal_sublinear_on_rotation() {
    let spec = rotation(500, 1.0);
    let x0 = RealVector::zeros(500).unwrap();
    let dstar = spec.known_fixed_point().unwrap().distance(&x0, L2);
    let cfg = SolverConfig::new(1e-8, 100_000).with_diameter(2.0 * dstar).with_trace_every(10);
    let r = ghal(&mut counted(spec), &x0, &cfg).unwrap();
    assert_ne!(r.termination, Termination::SafeguardHalt);
    let slope = loglog_slope(&r.trace, 100, 100_000);
    assert!((-1.5..=-0.7).contains(&slope), "slope {slope}");
}

#[test]
fn ghal_exp_shift_never_trips_safeguard() {
    for x0 in [RealVector::zeros(8).unwrap(), RealVector::filled(8, -1.0).unwrap()] {
        let mut op = counted(OperatorSpec::exp_shift(8, 0.4, 2.0).unwrap());
        let r = ghal(&mut op, &x0, &SolverConfig::new(1e-4, 2_000_000).with_diameter(2.0)).unwrap();
        assert_eq!(r.termination, Termination::TargetReached);
        assert_eq!(r.events.safeguard_triggers, 0);
    }
}

#[test]
fn ghal_break_revert_keeps_previous_step() {
    let parts = vec![
        OperatorSpec::ball_projection(20).unwrap(),
        OperatorSpec::rotation_hard(20, 1.0, 0.2).unwrap(),
        OperatorSpec::piecewise_scale(20, 1.01, 0.5).unwrap(),
    ];
    let spec = OperatorSpec::compose(parts).unwrap();
    let cfg = SolverConfig::new(1e-8, 20_000)
        .with_diameter(2.0)
        .with_halt_mode(HaltMode::BreakRevert);
    let r = ghal(&mut counted(spec), &RealVector::zeros(20).unwrap(), &cfg).unwrap();
    assert!(r.events.safeguard_triggers > 0);
    // Once the safeguard fires the step size never changes again.
    let recs = &r.trace.records;
    let last = recs.last().unwrap().lambda_current;
    let frozen_from = recs.iter().rposition(|rec| rec.lambda_current != last).map_or(0, |i| i + 1);
    assert!(frozen_from < recs.len());
    let mut eps: Vec<f64> = recs[frozen_from..].iter().filter_map(|r| r.eps_k).collect();
    eps.dedup();
    assert!(eps.len() > 1, "schedule keeps shrinking while the step is frozen");
}

#[test]
fn adaghal_identity() {
    let mut op = counted(OperatorSpec::identity(2).unwrap());
    let r = adaghal(&mut op, &v(&[1.0, 2.0]), &SolverConfig::new(1e-8, 100)).unwrap();
    assert_eq!((r.total_queries, r.termination), (1, Termination::TargetReached));
}

#[test]
fn adaghal_tracks_picard_on_contraction() {
    let x0 = RealVector::zeros(500).unwrap();
    let cfg = SolverConfig::new(1e-8, 10_000);
    let a = adaghal(&mut counted(rotation(500, 5.0 / 6.0)), &x0, &cfg).unwrap();
    let p = picard(&mut counted(rotation(500, 5.0 / 6.0)), &x0, &cfg).unwrap();
    assert_eq!(a.termination, Termination::TargetReached);
    assert!(a.total_queries <= 10 * p.total_queries);
}

#[test]
fn adaghal_on_univariate_contraction() {
    let eps = 1e-10;
    let r = adaghal(&mut counted(OperatorSpec::linear_scale(1, 0.5).unwrap()), &v(&[1.0]), &SolverConfig::new(eps, 100_000))
        .unwrap();
    assert_eq!(r.termination, Termination::TargetReached);
    let picard_count = (0.5f64 / eps).ln() / 2f64.ln();
    assert!((r.total_queries as f64) <= 10.0 * picard_count);
}

#[test]
fn resolvent_examples() {
    let x = v(&[0.9, -0.3, 2.0]);
    let mut id = counted(OperatorSpec::identity(3).unwrap());
    assert_eq!(resolvent(&mut id, &x, 2.5, 1e-12, DEFAULT_RESOLVENT_BUDGET).unwrap(), x);
    assert_eq!(id.queries(), 1);

    let mut zero = counted(OperatorSpec::zero(3).unwrap());
    let r = resolvent(&mut zero, &x, 1.0, 1e-12, DEFAULT_RESOLVENT_BUDGET).unwrap();
    let half: Vec<f64> = x.as_slice().iter().map(|c| c / 2.0).collect();
    assert!(r.distance(&v(&half), L2) <= 1e-10);

    // y = x/2 + y/4  ⇒  y = 2x/3
    let mut half_scale = counted(OperatorSpec::linear_scale(3, 0.5).unwrap());
    let r = resolvent(&mut half_scale, &x, 1.0, 1e-12, DEFAULT_RESOLVENT_BUDGET).unwrap();
    let two_thirds: Vec<f64> = x.as_slice().iter().map(|c| 2.0 * c / 3.0).collect();
    assert!(r.distance(&v(&two_thirds), L2) <= 1e-11);
}

#[test]
fn resolvent_detects_expansion() {
    let spec = OperatorSpec::linear_scale(1, -3.0).unwrap().with_lipschitz(Some(0.1));
    let err = resolvent(&mut counted(spec), &v(&[1.0]), 1.0, 1e-10, 1000).unwrap_err();
    assert_eq!(err, fplab_core::Error::ContractionFailure);
}

#[test]
fn trace_subsampling_keeps_boundaries() {
    let mut op = counted(OperatorSpec::linear_scale(1, 0.5).unwrap());
    let cfg = SolverConfig::new(1e-9, 10_000).with_lambda(0.25).with_trace_every(7);
    let r = fixhal_restarted(&mut op, &v(&[1.0]), &cfg).unwrap();
    let full = {
        let mut op = counted(OperatorSpec::linear_scale(1, 0.5).unwrap());
        fixhal_restarted(&mut op, &v(&[1.0]), &cfg.clone().with_trace_every(1)).unwrap()
    };
    let kept: Vec<u64> = r.trace.iter().map(|rec| rec.queries).collect();
    assert_eq!(*kept.last().unwrap(), r.total_queries);
    for w in full.trace.records.windows(2) {
        if w[0].phase != w[1].phase {
            assert!(kept.contains(&w[0].queries) && kept.contains(&w[1].queries));
        }
    }
    assert!(kept.windows(2).all(|w| w[0] < w[1]));
}

fn random_rotation() -> impl Strategy<Value = (OperatorSpec, RealVector)> {
    (2usize..24, 0.7f64..=1.0, 0.1f64..3.0)
        .prop_flat_map(|(d, gamma, s)| {
            (Just(OperatorSpec::rotation_hard(d, gamma, s).unwrap()), prop::collection::vec(-2.0f64..2.0, d))
        })
        .prop_map(|(spec, x0)| (spec, RealVector::new(x0).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn increment_identity((spec, x0) in random_rotation(), lambda in 0.001f64..0.5) {
        let mut op = counted(spec);
        let its: Vec<Iterate> = FixedStepIterates::new(&mut op, x0, lambda).unwrap().take(200).map(Result::unwrap).collect();
        let scale = its[0].point.norm(L2).max(its[0].image.norm(L2));
        for k in 1..its.len() - 1 {
            let lhs = its[k + 1].point.distance(&its[k].point, L2);
            let rhs = (1.0 - lambda) * its[k].image.distance(&its[k - 1].image, L2);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1e-3 * scale), "k={k} {lhs} {rhs}");
        }
    }

    #[test]
    fn fixed_step_envelope_and_fejer((spec, x0) in random_rotation(), lambda in 0.001f64..0.5) {
        let xstar = spec.known_fixed_point().unwrap();
        let gamma = spec.lipschitz().unwrap();
        let dstar = x0.distance(&xstar, L2);
        let mut op = counted(spec);
        let its: Vec<Iterate> = FixedStepIterates::new(&mut op, x0, lambda).unwrap().take(300).map(Result::unwrap).collect();
        let eps0 = its[0].image.distance(&its[0].point, L2);
        for (k, it) in its.iter().enumerate() {
            let residual = it.image.distance(&it.point, L2);
            let envelope = ((1.0 - lambda) * gamma).powi(k as i32) * eps0 + 2.0 * lambda / (1.0 - lambda) * dstar + 1e-9;
            prop_assert!(residual <= envelope, "k={k}");
            prop_assert!(it.point.distance(&xstar, L2) <= dstar + 1e-9);
        }
    }

    #[test]
    fn ghal_schedule((spec, x0) in random_rotation(), beta in 0.5f64..0.99) {
        let xstar = spec.known_fixed_point().unwrap();
        let d = (2.0 * x0.distance(&xstar, L2)).max(1e-3);
        let cfg = SolverConfig::new(1e-5, 50_000).with_diameter(d).with_betas(beta, 1.0 / 1.01);
        let r = ghal(&mut counted(spec), &x0, &cfg).unwrap();
        prop_assert_ne!(r.termination, Termination::SafeguardHalt);
        let recs = &r.trace.records;
        let eps0 = recs[0].eps_k.unwrap();
        for rec in recs {
            let expected = eps0 * beta.powi(rec.phase as i32);
            prop_assert!((rec.eps_k.unwrap() / expected - 1.0).abs() <= 1e-12);
        }
        for w in recs.windows(2) {
            if w[1].phase != w[0].phase && w[0].phase > 0 {
                prop_assert!(w[0].residual <= w[0].eps_k.unwrap());
            }
        }
        if r.termination == Termination::TargetReached {
            prop_assert!(r.final_residual <= 1e-5);
        }
    }

    #[test]
    fn adaghal_diameter_schedule((spec, x0) in random_rotation()) {
        let xstar = spec.known_fixed_point().unwrap();
        let dstar = x0.distance(&xstar, L2);
        let r = adaghal(&mut counted(spec), &x0, &SolverConfig::new(1e-5, 50_000)).unwrap();
        let ds: Vec<f64> = r.trace.iter().map(|rec| rec.d_estimate.unwrap()).collect();
        let mut jumps = 0;
        for w in ds.windows(2) {
            if w[1] != w[0] {
                prop_assert_eq!(w[1], 2.0 * w[0]);
                jumps += 1;
            }
        }
        prop_assert_eq!(jumps, r.events.diameter_doublings);
        prop_assert!(ds.iter().all(|&d| d <= 4.0 * dstar + 1e-9));
    }

    #[test]
    fn resolvent_fixed_point_relation((spec, x) in random_rotation(), tau in 0.05f64..20.0) {
        let tol = 1e-10;
        let mut op = counted(spec.clone());
        let r = resolvent(&mut op, &x, tau, tol, DEFAULT_RESOLVENT_BUDGET).unwrap();
        let tr = RealVector::new(spec.apply(r.as_slice())).unwrap();
        let s_r = fplab_core::combine(&x, &tr, 1.0 / (1.0 + tau)).unwrap();
        let q = tau * spec.lipschitz().unwrap() / (1.0 + tau);
        prop_assert!(r.distance(&s_r, L2) <= tol * (1.0 - q) + 1e-14);
    }

    #[test]
    fn queries_match_trace((spec, x0) in random_rotation(), budget in 1u64..400) {
        let r = picard(&mut counted(spec), &x0, &SolverConfig::new(1e-6, budget)).unwrap();
        prop_assert!(r.total_queries <= budget);
        prop_assert_eq!(r.trace.len() as u64, r.total_queries);
        for (i, rec) in r.trace.iter().enumerate() {
            prop_assert_eq!(rec.queries, i as u64 + 1);
            prop_assert_eq!(rec.global_iter, i as u64);
        }
    }
}

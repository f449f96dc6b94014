//! Batch verification of the operator zoo and the bound evaluators.

use std::fmt::Write as _;
use std::path::Path;

use fplab_core::solvers::{ghal, FixedStepIterates};
use fplab_core::verify::{
    bound_fixed_step, bound_ghal_expansive_error, bound_leb, bound_mild, check_gradually_expansive,
    check_increment_contraction, estimate_lipschitz, BoundInputs, CheckReport,
};
use fplab_core::{CountedOperator, DomainSampler, OperatorSpec, RealVector, Region, SolverConfig};
use serde::Serialize;

use crate::error::HarnessError;
use crate::export::{format_float, write_atomic};
use crate::operators::{projected_rotation_scale, rotation_slope};

/// An operator whose declared Lipschitz constant is checked on `region`.
#[derive(Debug, Clone)]
pub struct ZooEntry {
    pub name: String,
    pub operator: OperatorSpec,
    pub region: Region,
}

impl ZooEntry {
    pub fn new(name: impl Into<String>, operator: OperatorSpec, region: Region) -> Self {
        ZooEntry {
            name: name.into(),
            operator,
            region,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedCheck {
    pub name: String,
    /// False for negative controls, which must be rejected.
    pub expect_pass: bool,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<CheckReport>,
}

impl NamedCheck {
    pub fn ok(&self) -> bool {
        self.passed == self.expect_pass
    }

    fn from_report(name: &str, expect_pass: bool, report: CheckReport) -> Self {
        NamedCheck {
            name: name.to_string(),
            expect_pass,
            passed: report.passed,
            detail: format!(
                "worst_ratio={} samples={}",
                format_float(report.worst_ratio),
                report.samples_tested
            ),
            report: Some(report),
        }
    }

    fn value(name: &str, passed: bool, detail: String) -> Self {
        NamedCheck {
            name: name.to_string(),
            expect_pass: true,
            passed,
            detail,
            report: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub checks: Vec<NamedCheck>,
    pub warnings: Vec<String>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(NamedCheck::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &NamedCheck> {
        self.checks.iter().filter(|c| !c.ok())
    }
}

pub fn default_zoo() -> Result<Vec<ZooEntry>, HarnessError> {
    let d = 6;
    let cube = Region::Box { lo: -2.0, hi: 2.0 };
    let rot = OperatorSpec::rotation_hard(d, 1.0, 0.5)?;
    let scale = OperatorSpec::piecewise_scale(d, 1.01, 0.5)?;
    let entries = vec![
        ZooEntry::new("identity", OperatorSpec::identity(d)?, cube),
        ZooEntry::new("linear_scale_0.9", OperatorSpec::linear_scale(d, 0.9)?, cube),
        ZooEntry::new("rotation_hard_1", rot, cube),
        ZooEntry::new("rotation_hard_5over6", OperatorSpec::rotation_hard(d, 5.0 / 6.0, 2.0)?, cube),
        ZooEntry::new("piecewise_scale_1.01", scale, cube),
        ZooEntry::new(
            "piecewise_slope_0.25",
            OperatorSpec::piecewise_slope(d, 1.0, 0.25, Default::default())?,
            cube,
        ),
        ZooEntry::new("ball_projection", OperatorSpec::ball_projection(d)?, cube),
        ZooEntry::new("box_projection", OperatorSpec::box_projection(d, 1.0, 2.0)?, cube),
        ZooEntry::new("rotation_slope", rotation_slope(d, 1.0, 0.5, None, Default::default())?, cube),
        ZooEntry::new("projected_rotation_scale", projected_rotation_scale(d, 1.01, 0.5, None)?, cube),
    ];
    Ok(entries)
}

/// Runs the zoo plus the fixed checks. Reports go to `out_dir` when given.
pub fn verify_suite(
    zoo: &[ZooEntry],
    seed: u64,
    n_pairs: u64,
    out_dir: Option<&Path>,
) -> Result<SuiteOutcome, HarnessError> {
    let mut checks = Vec::new();
    let mut warnings = Vec::new();
    if zoo.is_empty() {
        warnings.push("operator zoo is empty; lipschitz checks pass vacuously".to_string());
    }
    for entry in zoo {
        let mut op = CountedOperator::new(entry.operator.clone());
        let mut s = DomainSampler::new(entry.region, entry.operator.dim(), seed);
        let r = estimate_lipschitz(&mut op, &mut s, n_pairs)?;
        checks.push(NamedCheck::from_report(&format!("lipschitz/{}", entry.name), true, r));
    }

    let unit_box = Region::Box { lo: -1.0, hi: 1.0 };
    for d in [1, 8] {
        let mut op = CountedOperator::new(OperatorSpec::exp_shift(d, 0.4, 2.0)?);
        let mut s = DomainSampler::new(unit_box, d, seed);
        let r = check_gradually_expansive(&mut op, 2.0, 0.4, &mut s, n_pairs, 1e-10)?;
        checks.push(NamedCheck::from_report(&format!("gradual_expansion/exp_shift_d{d}"), true, r));
    }

    let faulty = OperatorSpec::linear_scale(2, 1.5)?.with_lipschitz(Some(1.0));
    let mut op = CountedOperator::new(faulty);
    let mut s = DomainSampler::new(unit_box, 2, seed);
    let r = estimate_lipschitz(&mut op, &mut s, n_pairs.min(1000))?;
    checks.push(NamedCheck::from_report("negative_control/linear_scale_1.5", false, r));

    checks.extend(bound_checks()?);
    checks.push(increment_check()?);
    checks.push(safeguard_check()?);

    let outcome = SuiteOutcome { checks, warnings };
    if let Some(dir) = out_dir {
        write_reports(dir, &outcome)?;
    }
    Ok(outcome)
}

fn bound_checks() -> Result<Vec<NamedCheck>, HarnessError> {
    let fixed = bound_fixed_step(&BoundInputs::new(1.0, 0.01).with_d_star(1.0))?;
    let mild = bound_mild(&BoundInputs::new(1.0, 0.1).with_d(1.0).with_beta(0.5))?;
    let leb = bound_leb(0.5, 1.0)?;
    let err = bound_ghal_expansive_error(2.0, 1.0 + 1e-4, 0.975, 1.0 / 1.01)?;
    Ok(vec![
        NamedCheck::value("bounds/fixed_step", fixed.k == 2122, format!("k={}", fixed.k)),
        NamedCheck::value("bounds/mild", mild.k == 62, format!("k={}", mild.k)),
        NamedCheck::value(
            "bounds/leb",
            leb.k == 12 && (leb.lambda_max - 1.0 / 9.0).abs() < 1e-15,
            format!("k={} lambda_max={}", leb.k, format_float(leb.lambda_max)),
        ),
        NamedCheck::value(
            "bounds/ghal_error",
            (err - 0.021_249_178_172_255_095).abs() < 1e-10,
            format!("level={}", format_float(err)),
        ),
    ])
}

fn increment_check() -> Result<NamedCheck, HarnessError> {
    let lambda = 0.05;
    let spec = OperatorSpec::rotation_hard_default_shift(20, 1.0)?;
    let norm = spec.norm();
    let mut op = CountedOperator::new(spec);
    let x0 = RealVector::filled(20, 0.5)?;
    let iterates = FixedStepIterates::new(&mut op, x0, lambda)?
        .take(200)
        .map(|it| it.map(|i| i.point))
        .collect::<Result<Vec<_>, _>>()?;
    let r = check_increment_contraction(&iterates, norm, lambda, 1.0 / 1.01);
    Ok(NamedCheck::from_report("increment_contraction/rotation_d20", true, r))
}

fn safeguard_check() -> Result<NamedCheck, HarnessError> {
    let spec = OperatorSpec::rotation_hard_default_shift(50, 1.0)?;
    let mut op = CountedOperator::new(spec);
    let x0 = RealVector::zeros(50)?;
    let cfg = SolverConfig::new(1e-6, 20_000).with_diameter(2.0);
    let res = ghal(&mut op, &x0, &cfg)?;
    let n = res.events.safeguard_triggers;
    Ok(NamedCheck::value(
        "ghal_safeguard_silent/rotation_d50",
        n == 0,
        format!("safeguard_triggers={n} termination={}", res.termination),
    ))
}

fn write_reports(dir: &Path, outcome: &SuiteOutcome) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let jsonl_path = dir.join("verify_reports.jsonl");
    let mut jsonl = String::new();
    for c in &outcome.checks {
        let line = serde_json::to_string(c).map_err(|source| HarnessError::Json {
            path: jsonl_path.clone(),
            source,
        })?;
        jsonl.push_str(&line);
        jsonl.push('\n');
    }
    write_atomic(&jsonl_path, jsonl.as_bytes())?;
    let mut summary = String::from("check,expect_pass,passed,ok,detail\n");
    for c in &outcome.checks {
        let _ = writeln!(summary, "{},{},{},{},{}", c.name, c.expect_pass, c.passed, c.ok(), c.detail);
    }
    write_atomic(&dir.join("verify_summary.csv"), summary.as_bytes())
}

//! The verification suite: every check at configurable sizes,
//! each within its own time budget, failures recorded as data.

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::groebner::Budget;
use crate::idealops::{krull_dimension, saturate};
use crate::lab::build::{build_ideal, Family, SchemeSpec, Tag};
use crate::lab::family::{
    family_check, l54_canonical, l55_canonical, l56_canonical, l59_canonical,
};
use crate::lab::hom::{map_27, map_28, map_44, verify_hom, RingMap};
use crate::lab::points::check_jacobian_rank;
use crate::lab::psi::psi_membership_check;
use crate::lab::regular::regular_point_test;
use crate::lab::report::{params_from, run_check, Status, VerificationReport};
use crate::matrix::Mat;
use crate::monomial::MonomialOrder;

/// Suite configuration: sizes, field, per-check budget, seed.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub max_n: usize,
    pub max_m: usize,
    pub field: CoefficientField,
    pub budget_secs: f64,
    pub seed: u64,
    pub psi_samples: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_n: 2,
            max_m: 2,
            field: CoefficientField::Prime(crate::field::DEFAULT_PRIME),
            budget_secs: 120.0,
            seed: 0,
            psi_samples: 100,
        }
    }
}

/// Test-support fault injection; not part of the public contract.
#[doc(hidden)]
#[derive(Clone, Copy, Default)]
pub struct SuiteFaults {
    pub corrupt_corner_map: bool,
}

/// Runs every check at the configured sizes. Reports are sorted by
/// `check_id`; a failing check never aborts the suite.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    run_suite_with_faults(config, &SuiteFaults::default())
}

#[doc(hidden)]
pub fn run_suite_with_faults(
    config: &SuiteConfig,
    faults: &SuiteFaults,
) -> Result<Vec<VerificationReport>> {
    if config.max_n < 1 {
        return Err(Error::InvalidParameter("max_n must be at least 1".into()));
    }
    if config.budget_secs <= 0.0 {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    let field = config.field;
    let mut reports: Vec<VerificationReport> = Vec::new();

    // Dimension checks against the closed-form values.
    for n in 1..=config.max_n {
        reports.push(dimension_check(
            &SchemeSpec::new(Family::R, n, []),
            n * n + n,
            config,
        ));
    }
    for n in 2..=config.max_n {
        reports.push(dimension_check(
            &SchemeSpec::new(Family::R1, n, []),
            n * n + 1,
            config,
        ));
    }
    for m in 1..=config.max_m {
        reports.push(dimension_check(
            &SchemeSpec::new(Family::RTilde, m, [Tag::T0, Tag::AddW]),
            m * m + m + 2,
            config,
        ));
        reports.push(dimension_check(
            &SchemeSpec::new(Family::RTilde, m, [Tag::T1]),
            m * m + m + 2,
            config,
        ));
        reports.push(dimension_check(
            &SchemeSpec::new(Family::RTilde, m, [Tag::T0]),
            m * m + m + 2,
            config,
        ));
        reports.push(dimension_check(
            &SchemeSpec::new(Family::RTilde, m, [Tag::AddW]),
            m * m + m + 3,
            config,
        ));
    }

    // Saturation stability of the commutator presentation at n = 2.
    if config.max_n >= 2 {
        reports.push(saturation_report(config.field, config.budget_secs));
    }

    // Homomorphism checks: identity soundness plus the bundled maps.
    let budget = || Budget::from_secs_f64(config.budget_secs);
    for n in 1..=config.max_n {
        let report = match build_ideal(&SchemeSpec::new(Family::R, n, []), field)
            .and_then(|i| RingMap::identity(&i))
        {
            Ok(map) => verify_hom(&map, &budget()),
            Err(e) => error_report(format!("hom/id[I({n})]"), e),
        };
        reports.push(report);
    }
    for n in 2..=config.max_n {
        let m27 = match map_27(n, field) {
            Ok(mut map) => {
                if faults.corrupt_corner_map {
                    let idx = map.source.vars.index_of("x21").expect("x21 exists");
                    let bump =
                        crate::poly::Polynomial::from_i64(&map.target.vars, field, 1);
                    map.images[idx] = map.images[idx].add(&bump).expect("same ring");
                }
                verify_hom(&map, &budget())
            }
            Err(e) => error_report(format!("hom/2.7/n={n}"), e),
        };
        reports.push(m27);
        let m28 = match map_28(n, field) {
            Ok(map) => verify_hom(&map, &budget()),
            Err(e) => error_report(format!("hom/2.8/n={n}"), e),
        };
        reports.push(m28);
        let m44 = match map_44(n, field) {
            Ok(map) => verify_hom(&map, &budget()),
            Err(e) => error_report(format!("hom/4.4/n={n}"), e),
        };
        reports.push(m44);
    }

    // Jacobian ranks and parametrization membership at every valid triple.
    for m in 1..=config.max_m {
        for m1 in 0..=m {
            for m2 in 0..=(m - m1) {
                reports.push(check_jacobian_rank(m, m1, m2, field));
                reports.push(psi_membership_check(
                    m,
                    m1,
                    m2,
                    config.psi_samples,
                    config.seed,
                    field,
                ));
            }
        }
    }

    // Degeneration families.
    for m in 2..=config.max_m {
        match l54_canonical(m, field) {
            Ok(inst) => reports.push(family_check(&inst, field)),
            Err(e) => reports.push(error_report(format!("family/L54/m={m}"), e)),
        }
        match l55_canonical(m, field) {
            Ok(inst) => reports.push(family_check(&inst, field)),
            Err(e) => reports.push(error_report(format!("family/L55/m={m}"), e)),
        }
        match l59_canonical(m, 1, 1, field) {
            Ok(inst) => reports.push(family_check(&inst, field)),
            Err(e) => reports.push(error_report(format!("family/L59/m={m}"), e)),
        }
    }
    if config.max_m >= 2 {
        reports.push(family_check(&l56_canonical(field), field));
    }

    // Regular-point criterion.
    reports.push(regular_report(RegularCase::DistinctDiag, 2, field));
    reports.push(regular_report(RegularCase::ZeroPair, 2, field));
    for n in 2..=config.max_n {
        reports.push(regular_report(RegularCase::Jordan, n, field));
    }

    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

/// One dimension check: build, compute under a fresh budget, compare.
pub fn dimension_report(
    spec: &SchemeSpec,
    expected: usize,
    field: CoefficientField,
    budget_secs: f64,
) -> VerificationReport {
    let label = match build_ideal(spec, field) {
        Ok(i) => i.label.clone(),
        Err(_) => format!("{spec:?}"),
    };
    let params = params_from([
        ("ideal", json!(label)),
        ("field", json!(field.to_string())),
        ("order", json!("grevlex")),
    ]);
    run_check(format!("dim/{label}"), params, || {
        let ideal = build_ideal(spec, field)?;
        let budget = Budget::from_secs_f64(budget_secs);
        let dim = krull_dimension(&ideal, &MonomialOrder::GrevLex, &budget)?;
        let status = if dim == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        Ok((status, format!("dim={dim} expected={expected}")))
    })
}

fn dimension_check(
    spec: &SchemeSpec,
    expected: usize,
    config: &SuiteConfig,
) -> VerificationReport {
    dimension_report(spec, expected, config.field, config.budget_secs)
}

/// The saturation-stability check of the commutator presentation at n = 2.
pub fn saturation_report(field: CoefficientField, budget_secs: f64) -> VerificationReport {
    let params = params_from([
        ("ideal", json!("I(2)")),
        ("by", json!("x11-x22")),
        ("field", json!(field.to_string())),
    ]);
    run_check("saturate/I(2)", params, || {
        let ideal = build_ideal(&SchemeSpec::new(Family::R, 2, []), field)?;
        let f = ideal.parse("x11 - x22")?;
        let budget = Budget::from_secs_f64(budget_secs);
        let saturated = saturate(&ideal, &f, &budget)?;
        let gb_orig = ideal.groebner(&MonomialOrder::GrevLex, &budget)?;
        let gb_sat = saturated.groebner(&MonomialOrder::GrevLex, &budget)?;
        if gb_orig.gens() == gb_sat.gens() {
            Ok((
                Status::Pass,
                format!("reduced bases agree ({} generators)", gb_orig.gens().len()),
            ))
        } else {
            Ok((Status::Fail, "saturation changed the ideal".to_string()))
        }
    })
}

/// The three named regular-point cases.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RegularCase {
    DistinctDiag,
    ZeroPair,
    Jordan,
}

/// One regular-point check at size `n` (ignored for the fixed 2x2 cases).
pub fn regular_report(case: RegularCase, n: usize, field: CoefficientField) -> VerificationReport {
    match case {
        RegularCase::DistinctDiag => regular_check(
            "regular/distinct-diag(2)",
            Mat::diag(field, &[field.from_i64(1), field.from_i64(2)]),
            Mat::diag(field, &[field.from_i64(3), field.from_i64(4)]),
            2,
            true,
        ),
        RegularCase::ZeroPair => regular_check(
            "regular/zero-pair(2)",
            Mat::zero(field, 2, 2),
            Mat::zero(field, 2, 2),
            4,
            false,
        ),
        RegularCase::Jordan => {
            let n = n.max(2);
            let mut jordan = Mat::zero(field, n, n);
            for i in 0..n - 1 {
                *jordan.at_mut(i, i + 1) = field.one();
            }
            regular_check(
                &format!("regular/jordan({n})"),
                jordan,
                Mat::zero(field, n, n),
                n,
                true,
            )
        }
    }
}

fn regular_check(
    id: &str,
    a: Mat,
    b: Mat,
    expect_dim: usize,
    expect_regular: bool,
) -> VerificationReport {
    let params = params_from([
        ("n", json!(a.rows)),
        ("expect_dim", json!(expect_dim)),
        ("expect_regular", json!(expect_regular)),
    ]);
    run_check(id.to_string(), params, || {
        let (dim, regular) = regular_point_test(&a, &b)?;
        let status = if dim == expect_dim && regular == expect_regular {
            Status::Pass
        } else {
            Status::Fail
        };
        Ok((
            status,
            format!("centralizer_dim={dim} regular={regular} expected=({expect_dim},{expect_regular})"),
        ))
    })
}

fn error_report(check_id: String, err: Error) -> VerificationReport {
    run_check(check_id, Default::default(), || Err(err))
}

//! Distinguished closed points of the bordered commuting scheme and the
//! Jacobian smoothness check at them.

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::idealops::{jacobian_rank, IdealPresentation};
use crate::lab::build::{build_ideal, uname, vname, xname, yname, Family, SchemeSpec, Tag};
use crate::lab::report::{params_from, run_check, Status, VerificationReport};
use crate::monomial::MonomialOrder;
use crate::point::Point;

/// The presentation whose generators feed the Jacobian: commutator block,
/// eigen-rows, and the pairing sum, at `t = 0`.
pub fn jsecond_ideal(m: usize, field: CoefficientField) -> Result<IdealPresentation> {
    build_ideal(
        &SchemeSpec::new(Family::RTilde, m, [Tag::T0, Tag::AddW]),
        field,
    )
}

/// Eigenvalue rule for the distinguished points: the first `m1` entries of
/// the first diagonal and the last `m2` of the second collapse to 1; the
/// free entries are the explicit integers `i + 1` and `m + j + 2`, which
/// are pairwise distinct together with 1 over the rationals and over `F_p`
/// for `p > 2m + 3`.
pub fn point_p(m: usize, m1: usize, m2: usize, field: CoefficientField) -> Result<Point> {
    if m < 1 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if m1 + m2 > m {
        return Err(Error::InvalidParameter(format!(
            "m1 + m2 = {} exceeds m = {m}",
            m1 + m2
        )));
    }
    if let CoefficientField::Prime(p) = field {
        if p <= (2 * m + 3) as u64 {
            return Err(Error::InvalidParameter(format!(
                "prime {p} too small for pairwise-distinct eigenvalues at m = {m}"
            )));
        }
    }
    let ideal = jsecond_ideal(m, field)?;
    let vars = &ideal.vars;
    let mut values = vec![field.zero(); vars.len()];
    let mut set = |name: &str, v: Coeff| -> Result<()> {
        values[vars.require(name)?] = v;
        Ok(())
    };
    for i in 1..=m {
        let a_i = if i <= m1 { 1 } else { (i + 1) as i64 };
        set(&xname(i, i), field.from_i64(a_i))?;
        let b_i = if i > m - m2 { 1 } else { (m + i + 2) as i64 };
        set(&yname(i, i), field.from_i64(b_i))?;
        set(&uname(i), field.from_i64(if i <= m1 { 1 } else { 0 }))?;
        set(&vname(i), field.from_i64(if i > m - m2 { 1 } else { 0 }))?;
    }
    set("t1", field.one())?;
    set("t2", field.one())?;
    Point::from_values(vars, field, values)
}

/// Verifies generator vanishing at the distinguished point, then the
/// Jacobian rank `m^2 + m`. Vanishing is checked first: a rank assertion
/// at a point off the scheme would be meaningless.
pub fn check_jacobian_rank(
    m: usize,
    m1: usize,
    m2: usize,
    field: CoefficientField,
) -> VerificationReport {
    let params = params_from([
        ("m", json!(m)),
        ("m1", json!(m1)),
        ("m2", json!(m2)),
        ("field", json!(field.to_string())),
    ]);
    run_check(format!("jacobian/P({m},{m1},{m2})"), params, || {
        let ideal = jsecond_ideal(m, field)?;
        let p = point_p(m, m1, m2, field)?;
        jacobian_outcome(&ideal, &p, m)
    })
}

/// Shared body: membership precheck, then rank comparison.
pub(crate) fn jacobian_outcome(
    ideal: &IdealPresentation,
    p: &Point,
    m: usize,
) -> Result<(Status, String)> {
    for (idx, g) in ideal.gens.iter().enumerate() {
        if !g.evaluate(p)?.is_zero() {
            return Ok((
                Status::Fail,
                format!(
                    "membership precheck failed: gen[{idx}]={} does not vanish",
                    g.render(&MonomialOrder::GrevLex)
                ),
            ));
        }
    }
    let rank = jacobian_rank(&ideal.gens, p)?;
    let expected = m * m + m;
    if rank == expected {
        Ok((Status::Pass, format!("rank={rank} expected={expected}")))
    } else {
        Ok((Status::Fail, format!("rank={rank} expected={expected}")))
    }
}

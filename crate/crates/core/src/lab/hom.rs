//! Ring homomorphisms between ideal presentations, and the
//! well-definedness checker behind the bundled map verifications.

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::groebner::Budget;
use crate::idealops::IdealPresentation;
use crate::lab::build::{
    build_ideal, generic_matrix, u_column, vpname, xname, yname, Family, SchemeSpec, Tag,
};
use crate::lab::report::{params_from, run_check, Status, VerificationReport};
use crate::matrix::PolyMat;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::vars::Vars;

/// A generator-image description of a homomorphism between presentations.
///
/// `images[i]` is the image of the `i`-th source variable as a polynomial
/// on the target variables. Inverse witnesses `(z, w)` force `w` invertible
/// in the target by adjoining the relation `z*w - 1`; the witness variable
/// `z` must already belong to the target variable set.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub label: String,
    pub source: IdealPresentation,
    pub target: IdealPresentation,
    pub images: Vec<Polynomial>,
    pub inverse_witnesses: Vec<(String, Polynomial)>,
    /// Declared kernel generators (source-side), each expected to map into
    /// the target ideal.
    pub kernel: Vec<Polynomial>,
}

impl RingMap {
    /// The identity map on a presentation.
    pub fn identity(ideal: &IdealPresentation) -> Result<RingMap> {
        let images = ideal
            .vars
            .names()
            .iter()
            .map(|n| Polynomial::var(&ideal.vars, ideal.field, n))
            .collect::<Result<Vec<_>>>()?;
        Ok(RingMap {
            label: format!("id[{}]", ideal.label),
            source: ideal.clone(),
            target: ideal.clone(),
            images,
            inverse_witnesses: Vec::new(),
            kernel: Vec::new(),
        })
    }

    /// The target ideal with the witness relations `z*w - 1` adjoined.
    pub fn augmented_target_gens(&self) -> Result<Vec<Polynomial>> {
        let mut gens = self.target.gens.clone();
        for (z, w) in &self.inverse_witnesses {
            if w.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            let zp = Polynomial::var(&self.target.vars, self.target.field, z)?;
            gens.push(
                zp.mul(w)?
                    .sub(&Polynomial::from_i64(&self.target.vars, self.target.field, 1))?,
            );
        }
        Ok(gens)
    }

    /// Applies the map to a source polynomial.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        f.compose(&self.target.vars, &self.images)
    }
}

/// Checks well-definedness of a ring map: the image of every source-ideal
/// generator and of every declared kernel generator must lie in the target
/// ideal (with witness relations adjoined). The report lists any failing
/// generator. A Gröbner budget trip yields `budget_exceeded`, never a
/// silent pass.
pub fn verify_hom(map: &RingMap, budget: &Budget) -> VerificationReport {
    let params = params_from([
        ("map", json!(map.label)),
        ("source", json!(map.source.label)),
        ("target", json!(map.target.label)),
    ]);
    run_check(format!("hom/{}", map.label), params, || {
        if map.images.len() != map.source.vars.len() {
            return Err(Error::InvalidParameter(
                "one image per source variable is required".into(),
            ));
        }
        let gens = map.augmented_target_gens()?;
        let gb = crate::groebner::buchberger(
            &gens,
            &map.target.vars,
            map.target.field,
            &MonomialOrder::GrevLex,
            budget,
        )?;
        let mut offenders: Vec<String> = Vec::new();
        for (idx, g) in map.source.gens.iter().enumerate() {
            let image = map.apply(g)?;
            if !gb.contains(&image, budget)? {
                offenders.push(format!(
                    "gen[{idx}]={}",
                    g.render(&MonomialOrder::GrevLex)
                ));
            }
        }
        for (idx, k) in map.kernel.iter().enumerate() {
            let image = map.apply(k)?;
            if !gb.contains(&image, budget)? {
                offenders.push(format!(
                    "kernel[{idx}]={}",
                    k.render(&MonomialOrder::GrevLex)
                ));
            }
        }
        if offenders.is_empty() {
            Ok((
                Status::Pass,
                format!(
                    "{} generators and {} kernel elements map into the target ideal",
                    map.source.gens.len(),
                    map.kernel.len()
                ),
            ))
        } else {
            Ok((Status::Fail, format!("offending: {}", offenders.join("; "))))
        }
    })
}

/// Map 2.7: the corner specialization of the commutator presentation onto
/// the bordered presentation at `t = 1`.
///
/// Sends the last column of `X` and the last row of `Y` to zero, the last
/// row of `X` to `v`, the last column of `Y` to `u`, and the corner
/// entries to `t1`, `t2`.
pub fn map_27(n: usize, field: CoefficientField) -> Result<RingMap> {
    if n < 2 {
        return Err(Error::InvalidParameter("map 2.7 requires n >= 2".into()));
    }
    let source = build_ideal(&SchemeSpec::new(Family::R, n, []), field)?;
    let target = build_ideal(&SchemeSpec::new(Family::RTilde, n - 1, [Tag::T1]), field)?;
    let tv = &target.vars;
    let mut images = Vec::with_capacity(source.vars.len());
    for name in source.vars.names() {
        let img = map_27_image(name, n, tv, field)?;
        images.push(img);
    }
    let mut kernel = Vec::new();
    for i in 1..n {
        kernel.push(source.parse(&xname(i, n))?);
        kernel.push(source.parse(&yname(n, i))?);
    }
    Ok(RingMap {
        label: format!("2.7/n={n}"),
        source,
        target,
        images,
        inverse_witnesses: Vec::new(),
        kernel,
    })
}

fn map_27_image(
    name: &str,
    n: usize,
    tv: &Vars,
    field: CoefficientField,
) -> Result<Polynomial> {
    let var = |s: &str| Polynomial::var(tv, field, s);
    let zero = Polynomial::zero(tv, field);
    for i in 1..=n {
        for j in 1..=n {
            if name == xname(i, j) {
                return Ok(match (i == n, j == n) {
                    (false, false) => var(&xname(i, j))?,
                    (false, true) => zero,
                    (true, false) => var(&format!("v{j}"))?,
                    (true, true) => var("t1")?,
                });
            }
            if name == yname(i, j) {
                return Ok(match (i == n, j == n) {
                    (false, false) => var(&yname(i, j))?,
                    (false, true) => var(&format!("u{i}"))?,
                    (true, false) => zero,
                    (true, true) => var("t2")?,
                });
            }
        }
    }
    Err(Error::UnknownVariable(name.to_string()))
}

/// Map 2.8: kills the last row of `X` and the border of `Y`, landing in
/// the smaller commutator presentation with the corner entries adjoined as
/// free variables, localized at `f0 = det(X_{n-1} - x{nn}*I)`.
pub fn map_28(n: usize, field: CoefficientField) -> Result<RingMap> {
    if n < 2 {
        return Err(Error::InvalidParameter("map 2.8 requires n >= 2".into()));
    }
    let source = build_ideal(&SchemeSpec::new(Family::R1, n, []), field)?;
    // Target: I(n-1) with x{nn}, y{nn} adjoined and the witness variable z1.
    let base = build_ideal(&SchemeSpec::new(Family::R, n - 1, []), field)?;
    let ext_vars = base
        .vars
        .extend([xname(n, n), yname(n, n), "z1".to_string()])?;
    let embed: Vec<crate::poly::VarImage> = (0..base.vars.len())
        .map(crate::poly::VarImage::Var)
        .collect();
    let mut tgens = Vec::with_capacity(base.gens.len());
    for g in &base.gens {
        tgens.push(g.specialize(&ext_vars, &embed)?);
    }
    let target = IdealPresentation::new(
        ext_vars.clone(),
        field,
        tgens,
        format!("I({})[x{n}{n},y{n}{n}]", n - 1),
    )?;
    // f0 = det(X_{n-1} - x{nn} I).
    let x = generic_matrix(&ext_vars, field, "x", n - 1)?;
    let corner = Polynomial::var(&ext_vars, field, &xname(n, n))?;
    let f0 = x
        .sub(&PolyMat::scalar(&ext_vars, field, n - 1, &corner))?
        .det()?;

    let tv = &target.vars;
    let var = |s: &str| Polynomial::var(tv, field, s);
    let mut images = Vec::with_capacity(source.vars.len());
    for name in source.vars.names() {
        let img = if let Some(rest) = name.strip_prefix('x') {
            let (i, j) = split_ij(rest)?;
            if i == n && j == n {
                var(&xname(n, n))?
            } else if i == n {
                Polynomial::zero(tv, field)
            } else {
                var(name)?
            }
        } else {
            let (i, j) = split_ij(name.strip_prefix('y').unwrap())?;
            if i == n && j == n {
                var(&yname(n, n))?
            } else if i == n || j == n {
                Polynomial::zero(tv, field)
            } else {
                var(name)?
            }
        };
        images.push(img);
    }
    let mut kernel = Vec::new();
    for i in 1..n {
        kernel.push(source.parse(&xname(n, i))?);
    }
    Ok(RingMap {
        label: format!("2.8/n={n}"),
        source,
        target,
        images,
        inverse_witnesses: vec![("z1".to_string(), f0)],
        kernel,
    })
}

fn split_ij(digits: &str) -> Result<(usize, usize)> {
    let bytes = digits.as_bytes();
    if bytes.len() != 2 || !bytes.iter().all(u8::is_ascii_digit) {
        return Err(Error::UnknownVariable(digits.to_string()));
    }
    Ok(((bytes[0] - b'0') as usize, (bytes[1] - b'0') as usize))
}

/// Map 4.4: the bordered localization isomorphism. The source is the
/// two-row bordered presentation with the characteristic-value constraint,
/// quotiented by `v1, ..., v{n-1}, vn - 1`; the target is the rank-one
/// bordered presentation at `t = 0` with `w` appended, the last `x` column
/// and `vp{n}` adjoined free, and inverse witnesses for
/// `h = det(X_{n-1} - x{nn} I)` and `t1 - x{nn}`.
pub fn map_44(n: usize, field: CoefficientField) -> Result<RingMap> {
    if n < 2 {
        return Err(Error::InvalidParameter("map 4.4 requires n >= 2".into()));
    }
    // Source: J2(n) plus the v-quotient relations.
    let mut source = build_ideal(&SchemeSpec::new(Family::R2, n, []), field)?;
    for i in 1..n {
        let vi = source.parse(&format!("v{i}"))?;
        source.gens.push(vi);
    }
    let vn = source.parse(&format!("v{n} - 1"))?;
    source.gens.push(vn);
    source.label = format!("J2({n})+(v-e{n})");

    // Target: J(n-1) + (t, w) with the border column adjoined.
    let base = build_ideal(
        &SchemeSpec::new(Family::RTilde, n - 1, [Tag::T0, Tag::AddW]),
        field,
    )?;
    let mut extra: Vec<String> = (1..n).map(|i| xname(i, n)).collect();
    extra.push(xname(n, n));
    extra.push(vpname(n));
    extra.push("z1".to_string());
    extra.push("z2".to_string());
    let ext_vars = base.vars.extend(extra)?;
    let embed: Vec<crate::poly::VarImage> = (0..base.vars.len())
        .map(crate::poly::VarImage::Var)
        .collect();
    let mut tgens = Vec::with_capacity(base.gens.len());
    for g in &base.gens {
        tgens.push(g.specialize(&ext_vars, &embed)?);
    }
    let target = IdealPresentation::new(
        ext_vars.clone(),
        field,
        tgens,
        format!("{}[border]", base.label),
    )?;

    let tv = &target.vars;
    let var = |s: &str| Polynomial::var(tv, field, s);

    // h = det(X_{n-1} - x{nn} I) and its adjugate inverse via z1.
    let x_small = generic_matrix(tv, field, "x", n - 1)?;
    let corner = var(&xname(n, n))?;
    let shifted = x_small.sub(&PolyMat::scalar(tv, field, n - 1, &corner))?;
    let h = shifted.det()?;
    let adj = shifted.adjugate()?;
    let z1 = var("z1")?;
    let z2 = var("z2")?;

    // Y' = (Y_{n-1} - t2 I) (X_{n-1} - x{nn} I)^{-1} xcol + (t1 - x{nn})^{-1} ucol,
    // with both inverses represented through their witnesses.
    let y_small = generic_matrix(tv, field, "y", n - 1)?;
    let t2v = var("t2")?;
    let y_shift = y_small.sub(&PolyMat::scalar(tv, field, n - 1, &t2v))?;
    let mut xcol_data = Vec::with_capacity(n - 1);
    for i in 1..n {
        xcol_data.push(var(&xname(i, n))?);
    }
    let xcol = PolyMat::new(n - 1, 1, xcol_data)?;
    let ucol = u_column(tv, field, n - 1)?;
    let y_prime = y_shift
        .mul(&adj)?
        .mul(&xcol)?
        .scale(&z1)?
        .add(&ucol.scale(&z2)?)?;

    let mut images = Vec::with_capacity(source.vars.len());
    for name in source.vars.names() {
        let img: Polynomial = if let Some(rest) = name.strip_prefix("vp") {
            let i: usize = rest.parse().map_err(|_| Error::UnknownVariable(name.clone()))?;
            if i == n {
                var(&vpname(n))?
            } else {
                var(&format!("v{i}"))?
            }
        } else if let Some(rest) = name.strip_prefix('x') {
            let (i, j) = split_ij(rest)?;
            if i == n && j < n {
                Polynomial::zero(tv, field)
            } else {
                var(name)? // x{ij} small block, x{in} border, x{nn} corner
            }
        } else if let Some(rest) = name.strip_prefix('y') {
            let (i, j) = split_ij(rest)?;
            match (i == n, j == n) {
                (false, false) => var(name)?,
                (false, true) => y_prime.at(i - 1, 0).clone(),
                (true, false) => Polynomial::zero(tv, field),
                (true, true) => var("t2")?,
            }
        } else if let Some(rest) = name.strip_prefix('u') {
            let i: usize = rest.parse().map_err(|_| Error::UnknownVariable(name.clone()))?;
            if i == n {
                Polynomial::zero(tv, field)
            } else {
                var(name)?
            }
        } else if let Some(rest) = name.strip_prefix('v') {
            let i: usize = rest.parse().map_err(|_| Error::UnknownVariable(name.clone()))?;
            if i == n {
                Polynomial::from_i64(tv, field, 1)
            } else {
                Polynomial::zero(tv, field)
            }
        } else {
            match name.as_str() {
                "t1" => var("t1")?,
                "t2" => var(&xname(n, n))?,
                "t3" => var("t2")?,
                other => return Err(Error::UnknownVariable(other.to_string())),
            }
        };
        images.push(img);
    }
    let t1_minus_corner = var("t1")?.sub(&var(&xname(n, n))?)?;
    Ok(RingMap {
        label: format!("4.4/n={n}"),
        source,
        target,
        images,
        inverse_witnesses: vec![("z1".to_string(), h), ("z2".to_string(), t1_minus_corner)],
        kernel: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    #[test]
    fn identity_map_passes() {
        let i2 = build_ideal(&SchemeSpec::new(Family::R, 2, []), q()).unwrap();
        let map = RingMap::identity(&i2).unwrap();
        let report = verify_hom(&map, &Budget::unlimited());
        assert_eq!(report.status, Status::Pass);
    }

    #[test]
    fn map_27_n2_passes() {
        let map = map_27(2, q()).unwrap();
        // Spot-check the fixed image table.
        let sv = &map.source.vars;
        let tv = &map.target.vars;
        let idx = |n: &str| sv.index_of(n).unwrap();
        assert!(map.images[idx("x12")].is_zero());
        assert!(map.images[idx("y21")].is_zero());
        assert_eq!(
            map.images[idx("x21")],
            Polynomial::var(tv, q(), "v1").unwrap()
        );
        assert_eq!(
            map.images[idx("y12")],
            Polynomial::var(tv, q(), "u1").unwrap()
        );
        assert_eq!(
            map.images[idx("x22")],
            Polynomial::var(tv, q(), "t1").unwrap()
        );
        assert_eq!(
            map.images[idx("y22")],
            Polynomial::var(tv, q(), "t2").unwrap()
        );
        let report = verify_hom(&map, &Budget::unlimited());
        assert_eq!(report.status, Status::Pass, "{}", report.details);
    }

    #[test]
    fn corrupted_map_27_fails_with_offender() {
        let mut map = map_27(2, q()).unwrap();
        let idx = map.source.vars.index_of("x21").unwrap();
        let one = Polynomial::from_i64(&map.target.vars, q(), 1);
        map.images[idx] = map.images[idx].add(&one).unwrap();
        let report = verify_hom(&map, &Budget::unlimited());
        assert_eq!(report.status, Status::Fail);
        assert!(report.details.contains("gen[0]"), "{}", report.details);
    }

    #[test]
    fn map_28_n2_passes() {
        let map = map_28(2, q()).unwrap();
        let report = verify_hom(&map, &Budget::unlimited());
        assert_eq!(report.status, Status::Pass, "{}", report.details);
    }

    #[test]
    fn map_44_n2_passes() {
        let map = map_44(2, q()).unwrap();
        let report = verify_hom(&map, &Budget::unlimited());
        assert_eq!(report.status, Status::Pass, "{}", report.details);
    }

    #[test]
    fn hom_budget_trips_to_budget_exceeded() {
        let map = map_27(2, q()).unwrap();
        let report = verify_hom(&map, &Budget::from_secs_f64(0.0));
        assert_eq!(report.status, Status::BudgetExceeded);
    }
}

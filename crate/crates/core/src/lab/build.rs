//! Construction of the commuting-scheme ideal presentations.
//!
//! Variable naming is fixed artifact-wide: `x{i}{j}`, `y{i}{j}` (1-based,
//! row-major), `u{i}`, `v{i}`, `vp{i}`, `t`, `t1`, `t2`, `t3`, and
//! auxiliary inverse variables `z{k}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::idealops::IdealPresentation;
use crate::matrix::PolyMat;
use crate::poly::{Polynomial, VarImage};
use crate::vars::{VariableSet, Vars};

/// Ring family selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    /// `I(n)`: entries of the commutator of two generic matrices.
    R,
    /// `J(m)`: the rank-one bordered presentation with parameters
    /// `u, v, t1, t2, t`.
    RTilde,
    /// `I1(n)`: the commutator presentation with the last column of the
    /// first matrix killed.
    R1,
    /// `J'(n)`: the two-row bordered presentation with `v'` and `t3`.
    RPrime,
    /// `J2(n)`: `J'(n)` plus the characteristic-value constraint
    /// `det(X - t2*I)`.
    R2,
}

/// Specialization tags applied on top of a family.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Tag {
    /// Substitute `t = 0` (shrinks the variable set).
    T0,
    /// Substitute `t = 1` (shrinks the variable set).
    T1,
    /// Append `w_m = u1*v1 + ... + um*vm`.
    AddW,
    /// Substitute `x{i}{n} = 0` for `i < n`.
    KillXin,
    /// Substitute `y{n}{i} = 0` for `i < n`.
    KillYni,
    /// Append `det(X - t2*I)`.
    DetT2,
}

/// A scheme selector: family, size, and specialization tags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeSpec {
    pub family: Family,
    pub n: usize,
    pub tags: BTreeSet<Tag>,
}

impl SchemeSpec {
    pub fn new(family: Family, n: usize, tags: impl IntoIterator<Item = Tag>) -> Self {
        SchemeSpec {
            family,
            n,
            tags: tags.into_iter().collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidParameter("size must be at least 1".into()));
        }
        if self.n > 9 {
            return Err(Error::InvalidParameter(
                "sizes above 9 would make x{i}{j} names ambiguous".into(),
            ));
        }
        for tag in &self.tags {
            let ok = match tag {
                Tag::T0 | Tag::T1 | Tag::AddW => self.family == Family::RTilde,
                Tag::KillXin => self.family == Family::R,
                Tag::KillYni => matches!(self.family, Family::R | Family::R1),
                Tag::DetT2 => self.family == Family::RPrime,
            };
            if !ok {
                return Err(Error::InvalidParameter(format!(
                    "tag {tag:?} is not compatible with family {:?}",
                    self.family
                )));
            }
        }
        if self.tags.contains(&Tag::T0) && self.tags.contains(&Tag::T1) {
            return Err(Error::InvalidParameter(
                "tags t=0 and t=1 are mutually exclusive".into(),
            ));
        }
        Ok(())
    }
}

pub fn xname(i: usize, j: usize) -> String {
    format!("x{i}{j}")
}

pub fn yname(i: usize, j: usize) -> String {
    format!("y{i}{j}")
}

pub fn uname(i: usize) -> String {
    format!("u{i}")
}

pub fn vname(i: usize) -> String {
    format!("v{i}")
}

pub fn vpname(i: usize) -> String {
    format!("vp{i}")
}

fn matrix_names(prefix: &str, n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            out.push(format!("{prefix}{i}{j}"));
        }
    }
    out
}

/// Variables of `R(n)`: the `x` block then the `y` block, row-major.
pub fn vars_r(n: usize) -> Result<Vars> {
    VariableSet::new(matrix_names("x", n).into_iter().chain(matrix_names("y", n)))
}

/// Variables of `R~(m)`: `x`, `y`, `u`, `v`, `t1`, `t2`, `t`.
pub fn vars_r_tilde(m: usize) -> Result<Vars> {
    VariableSet::new(
        matrix_names("x", m)
            .into_iter()
            .chain(matrix_names("y", m))
            .chain((1..=m).map(uname))
            .chain((1..=m).map(vname))
            .chain(["t1".to_string(), "t2".to_string(), "t".to_string()]),
    )
}

/// Variables of `R'(n)`: `x`, `y`, `u`, `v`, `vp`, `t1`, `t2`, `t3`.
pub fn vars_r_prime(n: usize) -> Result<Vars> {
    VariableSet::new(
        matrix_names("x", n)
            .into_iter()
            .chain(matrix_names("y", n))
            .chain((1..=n).map(uname))
            .chain((1..=n).map(vname))
            .chain((1..=n).map(vpname))
            .chain(["t1".to_string(), "t2".to_string(), "t3".to_string()]),
    )
}

/// The generic matrix `(prefix{i}{j})` as a matrix of variables.
pub fn generic_matrix(
    vars: &Vars,
    field: CoefficientField,
    prefix: &str,
    n: usize,
) -> Result<PolyMat> {
    let mut data = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            data.push(Polynomial::var(vars, field, &format!("{prefix}{i}{j}"))?);
        }
    }
    PolyMat::new(n, n, data)
}

/// The column `(u1, ..., un)^t`.
pub fn u_column(vars: &Vars, field: CoefficientField, n: usize) -> Result<PolyMat> {
    let mut data = Vec::with_capacity(n);
    for i in 1..=n {
        data.push(Polynomial::var(vars, field, &uname(i))?);
    }
    PolyMat::new(n, 1, data)
}

/// The row `(v1, ..., vn)` (or `vp` when `primed`).
pub fn v_row(vars: &Vars, field: CoefficientField, n: usize, primed: bool) -> Result<PolyMat> {
    let mut data = Vec::with_capacity(n);
    for i in 1..=n {
        let name = if primed { vpname(i) } else { vname(i) };
        data.push(Polynomial::var(vars, field, &name)?);
    }
    PolyMat::new(1, n, data)
}

/// `M - s*I` for a scalar polynomial `s`.
fn shift_by(m: &PolyMat, s: &Polynomial) -> Result<PolyMat> {
    let proto = m.at(0, 0);
    m.sub(&PolyMat::scalar(proto.vars(), proto.field(), m.rows, s))
}

/// `w_m = u1*v1 + ... + um*vm` over the given variables.
pub fn w_poly(vars: &Vars, field: CoefficientField, m: usize) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(vars, field);
    for i in 1..=m {
        let ui = Polynomial::var(vars, field, &uname(i))?;
        let vi = Polynomial::var(vars, field, &vname(i))?;
        acc = acc.add(&ui.mul(&vi)?)?;
    }
    Ok(acc)
}

fn label_for(spec: &SchemeSpec) -> String {
    let n = spec.n;
    let mut suffixes: Vec<String> = Vec::new();
    if spec.tags.contains(&Tag::T0) {
        suffixes.push("t".to_string());
    }
    if spec.tags.contains(&Tag::T1) {
        suffixes.push("t-1".to_string());
    }
    if spec.tags.contains(&Tag::AddW) {
        suffixes.push(format!("w{n}"));
    }
    if spec.tags.contains(&Tag::KillXin) {
        suffixes.push("xin".to_string());
    }
    if spec.tags.contains(&Tag::KillYni) {
        suffixes.push("yni".to_string());
    }
    if spec.tags.contains(&Tag::DetT2) {
        suffixes.push("det".to_string());
    }
    let base = match spec.family {
        Family::R => format!("I({n})"),
        Family::RTilde => format!("J({n})"),
        Family::R1 => format!("I1({n})"),
        Family::RPrime => format!("J'({n})"),
        Family::R2 => format!("J2({n})"),
    };
    if suffixes.is_empty() {
        base
    } else {
        format!("{base}+({})", suffixes.join(","))
    }
}

/// Builds the ideal presentation selected by `spec`. Generators follow the
/// row-major matrix-entry expansion; identically-zero entries are dropped.
/// Killed variables are substituted away, shrinking the variable set.
pub fn build_ideal(spec: &SchemeSpec, field: CoefficientField) -> Result<IdealPresentation> {
    spec.validate()?;
    let n = spec.n;
    let (vars, mut gens) = match spec.family {
        Family::R | Family::R1 => {
            let vars = vars_r(n)?;
            let x = generic_matrix(&vars, field, "x", n)?;
            let y = generic_matrix(&vars, field, "y", n)?;
            (vars, x.commutator(&y)?.entries().to_vec())
        }
        Family::RTilde => {
            let vars = vars_r_tilde(n)?;
            let x = generic_matrix(&vars, field, "x", n)?;
            let y = generic_matrix(&vars, field, "y", n)?;
            let u = u_column(&vars, field, n)?;
            let v = v_row(&vars, field, n, false)?;
            let t = Polynomial::var(&vars, field, "t")?;
            let t1 = Polynomial::var(&vars, field, "t1")?;
            let t2 = Polynomial::var(&vars, field, "t2")?;
            let mut gens = Vec::new();
            let rank_one = u.mul(&v)?.scale(&t)?;
            gens.extend(x.commutator(&y)?.sub(&rank_one)?.entries().iter().cloned());
            gens.extend(shift_by(&x, &t1)?.mul(&u)?.entries().iter().cloned());
            gens.extend(v.mul(&shift_by(&y, &t2)?)?.entries().iter().cloned());
            (vars, gens)
        }
        Family::RPrime | Family::R2 => {
            let vars = vars_r_prime(n)?;
            let x = generic_matrix(&vars, field, "x", n)?;
            let y = generic_matrix(&vars, field, "y", n)?;
            let u = u_column(&vars, field, n)?;
            let v = v_row(&vars, field, n, false)?;
            let vp = v_row(&vars, field, n, true)?;
            let t1 = Polynomial::var(&vars, field, "t1")?;
            let t2 = Polynomial::var(&vars, field, "t2")?;
            let t3 = Polynomial::var(&vars, field, "t3")?;
            let mut gens = Vec::new();
            gens.extend(
                x.commutator(&y)?
                    .sub(&u.mul(&v)?)?
                    .entries()
                    .iter()
                    .cloned(),
            );
            gens.extend(shift_by(&x, &t1)?.mul(&u)?.entries().iter().cloned());
            gens.extend(v.mul(&shift_by(&x, &t2)?)?.entries().iter().cloned());
            gens.extend(v.mul(&shift_by(&y, &t3)?)?.entries().iter().cloned());
            gens.extend(vp.mul(&shift_by(&y, &t3)?)?.entries().iter().cloned());
            if spec.family == Family::R2 {
                gens.push(shift_by(&x, &t2)?.det()?);
            }
            (vars, gens)
        }
    };
    let mut vars = vars;

    // Killed-variable substitutions (quotients by linear relations).
    let mut kills: Vec<(String, Coeff)> = Vec::new();
    if spec.family == Family::R1 || spec.tags.contains(&Tag::KillXin) {
        for i in 1..n {
            kills.push((xname(i, n), field.zero()));
        }
    }
    if spec.tags.contains(&Tag::KillYni) {
        for i in 1..n {
            kills.push((yname(n, i), field.zero()));
        }
    }
    if spec.tags.contains(&Tag::T0) {
        kills.push(("t".to_string(), field.zero()));
    }
    if spec.tags.contains(&Tag::T1) {
        kills.push(("t".to_string(), field.one()));
    }
    if !kills.is_empty() {
        let (new_vars, new_gens) = substitute_away(&vars, &gens, &kills)?;
        vars = new_vars;
        gens = new_gens;
    }

    if spec.tags.contains(&Tag::AddW) {
        gens.push(w_poly(&vars, field, n)?);
    }
    if spec.family == Family::R2 {
        // Generator already appended above, before substitutions (R2 takes
        // no kill tags).
    }

    gens.retain(|g| !g.is_zero());
    IdealPresentation::new(vars, field, gens, label_for(spec))
}

/// Substitutes constants for the named variables and drops them from the
/// variable set.
pub fn substitute_away(
    vars: &Vars,
    gens: &[Polynomial],
    kills: &[(String, Coeff)],
) -> Result<(Vars, Vec<Polynomial>)> {
    let mut killed: Vec<Option<Coeff>> = vec![None; vars.len()];
    for (name, value) in kills {
        let idx = vars.require(name)?;
        killed[idx] = Some(value.clone());
    }
    let new_vars = vars.subset(|i| killed[i].is_none())?;
    let mut images = Vec::with_capacity(vars.len());
    let mut next = 0usize;
    for k in &killed {
        match k {
            Some(c) => images.push(VarImage::Const(c.clone())),
            None => {
                images.push(VarImage::Var(next));
                next += 1;
            }
        }
    }
    let mut new_gens = Vec::with_capacity(gens.len());
    for g in gens {
        new_gens.push(g.specialize(&new_vars, &images)?);
    }
    Ok((new_vars, new_gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    #[test]
    fn commutator_of_size_one_vanishes() {
        let i1 = build_ideal(&SchemeSpec::new(Family::R, 1, []), q()).unwrap();
        assert!(i1.gens.is_empty());
        assert_eq!(i1.label, "I(1)");
    }

    #[test]
    fn first_commutator_entry_matches_expansion() {
        let i2 = build_ideal(&SchemeSpec::new(Family::R, 2, []), q()).unwrap();
        assert_eq!(i2.gens.len(), 4);
        let expect = i2.parse("x12*y21 - y12*x21").unwrap();
        assert_eq!(i2.gens[0], expect);
    }

    #[test]
    fn generator_counts() {
        for n in 2..=4 {
            let i = build_ideal(&SchemeSpec::new(Family::R, n, []), q()).unwrap();
            assert_eq!(i.gens.len(), n * n);
        }
        for m in 2..=3 {
            let j = build_ideal(&SchemeSpec::new(Family::RTilde, m, []), q()).unwrap();
            assert_eq!(j.gens.len(), m * m + 2 * m);
        }
    }

    #[test]
    fn trace_of_commutator_block_vanishes() {
        let vars = vars_r(3).unwrap();
        let x = generic_matrix(&vars, q(), "x", 3).unwrap();
        let y = generic_matrix(&vars, q(), "y", 3).unwrap();
        let c = x.commutator(&y).unwrap();
        let mut tr = Polynomial::zero(&vars, q());
        for i in 0..3 {
            tr = tr.add(c.at(i, i)).unwrap();
        }
        assert!(tr.is_zero());
    }

    #[test]
    fn bordered_rank_one_specialization() {
        // m = 1 with t = 0 and w appended: the commutator generator dies,
        // leaving the two border rows and w1 on six variables.
        let spec = SchemeSpec::new(Family::RTilde, 1, [Tag::T0, Tag::AddW]);
        let j = build_ideal(&spec, q()).unwrap();
        assert_eq!(j.label, "J(1)+(t,w1)");
        assert_eq!(
            j.vars.names(),
            &["x11", "y11", "u1", "v1", "t1", "t2"]
                .map(|s| s.to_string())
        );
        let expect: Vec<Polynomial> = ["x11*u1 - t1*u1", "v1*y11 - v1*t2", "u1*v1"]
            .iter()
            .map(|s| j.parse(s).unwrap())
            .collect();
        assert_eq!(j.gens, expect);
    }

    #[test]
    fn tag_compatibility_enforced() {
        assert!(build_ideal(&SchemeSpec::new(Family::R, 2, [Tag::T0]), q()).is_err());
        assert!(build_ideal(&SchemeSpec::new(Family::RPrime, 2, [Tag::AddW]), q()).is_err());
        assert!(
            build_ideal(&SchemeSpec::new(Family::RTilde, 2, [Tag::T0, Tag::T1]), q()).is_err()
        );
        assert!(build_ideal(&SchemeSpec::new(Family::RPrime, 2, [Tag::DetT2]), q()).is_ok());
    }

    #[test]
    fn r1_kills_last_column() {
        let i12 = build_ideal(&SchemeSpec::new(Family::R1, 2, []), q()).unwrap();
        assert!(i12.vars.index_of("x12").is_none());
        assert_eq!(i12.vars.len(), 7);
        // Entry (2,2) of the commutator with x12 = 0 is x21*y12.
        let e22 = i12.parse("x21*y12").unwrap();
        assert!(i12.gens.contains(&e22));
    }

    #[test]
    fn r2_appends_characteristic_constraint() {
        let j2 = build_ideal(&SchemeSpec::new(Family::R2, 2, []), q()).unwrap();
        let det = j2
            .parse("(x11 - t2)*(x22 - t2) - x12*x21")
            .unwrap();
        assert!(j2.gens.contains(&det));
        assert_eq!(j2.gens.len(), 4 + 2 + 2 + 2 + 2 + 1);
    }
}

//! Derived ideal operations on presentations: elimination, saturation,
//! radical membership, Krull dimension, Jacobian rank at a point.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::groebner::{buchberger, Budget, GroebnerBasis};
use crate::matrix::Mat;
use crate::monomial::MonomialOrder;
use crate::point::Point;
use crate::poly::{Polynomial, VarImage};
use crate::vars::{same_vars, Vars};

/// A named ideal: variable set, generators and a provenance label.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealPresentation {
    pub vars: Vars,
    pub field: CoefficientField,
    pub gens: Vec<Polynomial>,
    pub label: String,
}

impl IdealPresentation {
    pub fn new(
        vars: Vars,
        field: CoefficientField,
        gens: Vec<Polynomial>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let label = label.into();
        if label.is_empty() {
            return Err(Error::InvalidParameter("ideal label must be nonempty".into()));
        }
        for g in &gens {
            if g.field() != field {
                return Err(Error::FieldMismatch);
            }
            if !same_vars(g.vars(), &vars) {
                return Err(Error::VarSetMismatch);
            }
        }
        Ok(IdealPresentation {
            vars,
            field,
            gens,
            label,
        })
    }

    pub fn groebner(&self, order: &MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
        buchberger(&self.gens, &self.vars, self.field, order, budget)
    }

    /// Parses one generator in this presentation's context.
    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        Polynomial::parse(text, &self.vars, self.field)
    }
}

/// Picks a fresh auxiliary variable name `z{k}`, incrementing past any
/// existing `z{k}` names.
fn fresh_aux_name(vars: &Vars) -> String {
    let mut k = 1u32;
    for name in vars.names() {
        if let Some(rest) = name.strip_prefix('z') {
            if let Ok(n) = rest.parse::<u32>() {
                k = k.max(n + 1);
            }
        }
    }
    format!("z{k}")
}

/// Generators of `I ∩ K[vars \ drop]`, computed with a block order that
/// puts the dropped variables in front. The result lives on the smaller
/// variable set.
pub fn eliminate(
    ideal: &IdealPresentation,
    drop: &BTreeSet<String>,
    budget: &Budget,
) -> Result<IdealPresentation> {
    let mut front = Vec::new();
    for name in drop {
        front.push(ideal.vars.require(name)?);
    }
    let order = MonomialOrder::block(front.clone(), MonomialOrder::GrevLex);
    let gb = ideal.groebner(&order, budget)?;
    let front_set: BTreeSet<usize> = front.into_iter().collect();

    let kept_vars = ideal.vars.subset(|i| !front_set.contains(&i))?;
    // Old index -> image in the restricted set.
    let mut images = Vec::with_capacity(ideal.vars.len());
    let mut next = 0usize;
    for i in 0..ideal.vars.len() {
        if front_set.contains(&i) {
            images.push(None);
        } else {
            images.push(Some(next));
            next += 1;
        }
    }
    let mut gens = Vec::new();
    for g in gb.gens() {
        let touches_front = g
            .terms()
            .iter()
            .any(|(m, _)| front_set.iter().any(|&i| m.exp(i) > 0));
        if touches_front {
            continue;
        }
        let spec: Vec<VarImage> = images
            .iter()
            .map(|img| match img {
                Some(j) => VarImage::Var(*j),
                // Dropped variables cannot occur in this generator.
                None => VarImage::Const(ideal.field.zero()),
            })
            .collect();
        gens.push(g.specialize(&kept_vars, &spec)?);
    }
    let dropped: Vec<String> = drop.iter().cloned().collect();
    IdealPresentation::new(
        kept_vars,
        ideal.field,
        gens,
        format!("elim({};{})", ideal.label, dropped.join(",")),
    )
}

/// The saturation `I : f^∞` via the auxiliary-variable construction:
/// eliminate `z` from `I + (1 - z*f)`.
pub fn saturate(
    ideal: &IdealPresentation,
    f: &Polynomial,
    budget: &Budget,
) -> Result<IdealPresentation> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (ext, z_ideal) = adjoin_inverse(ideal, f)?;
    let mut drop = BTreeSet::new();
    drop.insert(z_ideal);
    let mut out = eliminate(&ext, &drop, budget)?;
    out.label = format!("sat({};{})", ideal.label, f.render(&MonomialOrder::GrevLex));
    Ok(out)
}

/// Extends the presentation with a fresh variable `z` and the generator
/// `z*f - 1`; returns the extension and the fresh name.
fn adjoin_inverse(
    ideal: &IdealPresentation,
    f: &Polynomial,
) -> Result<(IdealPresentation, String)> {
    let z = fresh_aux_name(&ideal.vars);
    let ext_vars = ideal.vars.extend([z.clone()])?;
    let embed: Vec<VarImage> = (0..ideal.vars.len()).map(VarImage::Var).collect();
    let mut gens = Vec::with_capacity(ideal.gens.len() + 1);
    for g in &ideal.gens {
        gens.push(g.specialize(&ext_vars, &embed)?);
    }
    let zf = Polynomial::var(&ext_vars, ideal.field, &z)?
        .mul(&f.specialize(&ext_vars, &embed)?)?
        .sub(&Polynomial::from_i64(&ext_vars, ideal.field, 1))?;
    gens.push(zf);
    let ext = IdealPresentation::new(
        ext_vars,
        ideal.field,
        gens,
        format!("{}+inv", ideal.label),
    )?;
    Ok((ext, z))
}

/// Rabinowitsch test: `f` lies in the radical of `I` iff
/// `1 ∈ I + (1 - z*f)`.
pub fn radical_membership(
    f: &Polynomial,
    ideal: &IdealPresentation,
    budget: &Budget,
) -> Result<bool> {
    if f.is_zero() {
        // 0 is in every radical.
        return Ok(true);
    }
    let (ext, _) = adjoin_inverse(ideal, f)?;
    let gb = ext.groebner(&MonomialOrder::GrevLex, budget)?;
    Ok(gb.is_unit_ideal())
}

/// Krull dimension of the quotient by `I`: the maximum size of a variable
/// subset that contains the support of no leading monomial of the reduced
/// basis. Returns a distinct error for the unit ideal.
pub fn krull_dimension(
    ideal: &IdealPresentation,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<usize> {
    let gb = ideal.groebner(order, budget)?;
    if gb.is_unit_ideal() {
        return Err(Error::UnitIdeal(ideal.label.clone()));
    }
    let nvars = ideal.vars.len();
    if nvars > 128 {
        return Err(Error::TooManyVariables(nvars));
    }
    let mut supports: Vec<u128> = Vec::new();
    for m in gb.leading_monomials() {
        supports.push(m.support_mask()?);
    }
    supports.sort();
    supports.dedup();
    // Drop supports that contain another support: hitting the smaller one
    // hits the larger one.
    let minimal: Vec<u128> = supports
        .iter()
        .filter(|&&s| !supports.iter().any(|&t| t != s && t & s == t))
        .copied()
        .collect();
    // dim = nvars - (minimum number of variables meeting every support).
    let mut best = minimal.len().min(nvars);
    let mut chosen = 0usize;
    min_hitting_set(&minimal, 0u128, &mut chosen, &mut best);
    Ok(nvars - best)
}

/// Branch-and-bound minimum hitting set over support masks.
fn min_hitting_set(supports: &[u128], hit: u128, chosen: &mut usize, best: &mut usize) {
    if *chosen >= *best {
        return;
    }
    // First support not yet hit.
    let Some(&s) = supports.iter().find(|&&s| s & hit == 0) else {
        *best = *chosen;
        return;
    };
    let mut rest = s;
    while rest != 0 {
        let bit = rest & rest.wrapping_neg();
        rest ^= bit;
        *chosen += 1;
        min_hitting_set(supports, hit | bit, chosen, best);
        *chosen -= 1;
    }
}

/// Rank over the coefficient field of `[∂g_i/∂x_j]` evaluated at `p`.
pub fn jacobian_rank(gens: &[Polynomial], p: &Point) -> Result<usize> {
    let field = p.field();
    let nvars = p.vars().len();
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !same_vars(g.vars(), p.vars()) {
            return Err(Error::VarSetMismatch);
        }
        let mut row = Vec::with_capacity(nvars);
        for j in 0..nvars {
            row.push(g.partial_derivative_idx(j).evaluate(p)?);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(Mat::from_rows(field, rows)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VariableSet;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    fn ideal(names: &[&str], gens: &[&str], label: &str) -> IdealPresentation {
        let vars = VariableSet::new(names.iter().copied()).unwrap();
        let gens = gens
            .iter()
            .map(|s| Polynomial::parse(s, &vars, q()).unwrap())
            .collect();
        IdealPresentation::new(vars, q(), gens, label).unwrap()
    }

    #[test]
    fn eliminate_graph_projection() {
        let b = Budget::unlimited();
        let i = ideal(&["t", "u", "v"], &["t - v", "t*u"], "I");
        let mut drop = BTreeSet::new();
        drop.insert("t".to_string());
        let out = eliminate(&i, &drop, &b).unwrap();
        assert_eq!(out.vars.names(), &["u".to_string(), "v".to_string()]);
        let uv = Polynomial::parse("u*v", &out.vars, q()).unwrap();
        assert_eq!(out.gens, vec![uv]);

        // Identity case: nothing dropped.
        let i2 = ideal(&["x"], &["x"], "J");
        let out2 = eliminate(&i2, &BTreeSet::new(), &b).unwrap();
        assert_eq!(out2.gens, i2.gens);

        // Projection of a graph is everything: no generators survive.
        let i3 = ideal(&["x", "y"], &["x - y"], "K");
        let mut dx = BTreeSet::new();
        dx.insert("x".to_string());
        let out3 = eliminate(&i3, &dx, &b).unwrap();
        assert!(out3.gens.is_empty());
    }

    #[test]
    fn saturate_examples() {
        let b = Budget::unlimited();
        let i = ideal(&["x", "y"], &["x^2*y"], "I");
        let fx = i.parse("x").unwrap();
        let out = saturate(&i, &fx, &b).unwrap();
        assert_eq!(out.gens, vec![out.parse("y").unwrap()]);
        // Saturation result lives on the original variables.
        assert_eq!(out.vars.names(), i.vars.names());

        let one = i.parse("1").unwrap();
        let out1 = saturate(&i, &one, &b).unwrap();
        let gb_a = out1.groebner(&MonomialOrder::GrevLex, &b).unwrap();
        let gb_b = i.groebner(&MonomialOrder::GrevLex, &b).unwrap();
        assert_eq!(gb_a.gens(), gb_b.gens());

        assert!(saturate(&i, &Polynomial::zero(&i.vars, q()), &b).is_err());
    }

    #[test]
    fn saturate_idempotent() {
        let b = Budget::unlimited();
        let i = ideal(&["x", "y"], &["x^2*y", "x*y^3"], "I");
        let fx = i.parse("x").unwrap();
        let once = saturate(&i, &fx, &b).unwrap();
        let twice = saturate(&once, &fx, &b).unwrap();
        let gb1 = once.groebner(&MonomialOrder::GrevLex, &b).unwrap();
        let gb2 = twice.groebner(&MonomialOrder::GrevLex, &b).unwrap();
        assert_eq!(gb1.gens(), gb2.gens());
    }

    #[test]
    fn radical_membership_examples() {
        let b = Budget::unlimited();
        let i = ideal(&["x", "y"], &["x^2"], "I");
        assert!(radical_membership(&i.parse("x").unwrap(), &i, &b).unwrap());
        assert!(!radical_membership(&i.parse("y").unwrap(), &i, &b).unwrap());
    }

    #[test]
    fn radical_membership_agrees_with_direct_membership() {
        // The bordered pairing product already lies in the unit-specialized
        // ideal, so the radical test must agree with plain membership.
        let b = Budget::unlimited();
        let i = ideal(
            &["x11", "y11", "u1", "v1", "t1", "t2", "t"],
            &[
                "-t*u1*v1",
                "x11*u1 - t1*u1",
                "v1*y11 - v1*t2",
                "t - 1",
            ],
            "J(1)+(t-1)",
        );
        let f = i.parse("u1*v1").unwrap();
        let gb = i.groebner(&MonomialOrder::GrevLex, &b).unwrap();
        assert!(gb.contains(&f, &b).unwrap());
        assert!(radical_membership(&f, &i, &b).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let b = Budget::unlimited();
        let zero = ideal(&["x", "y", "z"], &[], "0");
        assert_eq!(
            krull_dimension(&zero, &MonomialOrder::GrevLex, &b).unwrap(),
            3
        );
        let unit = ideal(&["x"], &["1"], "1");
        assert!(matches!(
            krull_dimension(&unit, &MonomialOrder::GrevLex, &b),
            Err(Error::UnitIdeal(_))
        ));
        // Twisted cubic: dimension 1 in 3 variables.
        let tc = ideal(
            &["x", "y", "z"],
            &["y - x^2", "z - x^3"],
            "twisted cubic",
        );
        assert_eq!(krull_dimension(&tc, &MonomialOrder::GrevLex, &b).unwrap(), 1);
        assert_eq!(krull_dimension(&tc, &MonomialOrder::Lex, &b).unwrap(), 1);
    }

    #[test]
    fn jacobian_rank_examples() {
        let vars = VariableSet::new(["x", "y"]).unwrap();
        let f = q();
        let gx = Polynomial::parse("x", &vars, f).unwrap();
        let gy = Polynomial::parse("y", &vars, f).unwrap();
        let origin = Point::from_values(&vars, f, vec![f.zero(), f.zero()]).unwrap();
        assert_eq!(jacobian_rank(&[gx, gy], &origin).unwrap(), 2);

        // All gradients vanish at the origin for squares.
        let g2 = Polynomial::parse("x^2 + y^2", &vars, f).unwrap();
        let g3 = Polynomial::parse("x*y", &vars, f).unwrap();
        assert_eq!(jacobian_rank(&[g2, g3], &origin).unwrap(), 0);
    }

    #[test]
    fn jacobian_rank_of_bordered_generators_at_a_vanishing_point() {
        // (g1, h1, w1) at (x=2, y=3, u=0, v=0, t1=1, t2=1): every generator
        // vanishes and the Jacobian has rank 2.
        let vars = VariableSet::new(["x11", "y11", "u1", "v1", "t1", "t2"]).unwrap();
        let f = q();
        let gens: Vec<Polynomial> = ["(x11 - t1)*u1", "v1*(y11 - t2)", "u1*v1"]
            .iter()
            .map(|s| Polynomial::parse(s, &vars, f).unwrap())
            .collect();
        let p = Point::from_values(
            &vars,
            f,
            [2, 3, 0, 0, 1, 1].iter().map(|k| f.from_i64(*k)).collect(),
        )
        .unwrap();
        for g in &gens {
            assert!(g.evaluate(&p).unwrap().is_zero());
        }
        assert_eq!(jacobian_rank(&gens, &p).unwrap(), 2);
    }

    #[test]
    fn jacobian_rank_row_scaling_invariance() {
        let vars = VariableSet::new(["x", "y", "z"]).unwrap();
        let f = q();
        let g1 = Polynomial::parse("x*y - z", &vars, f).unwrap();
        let g2 = Polynomial::parse("x + y^2", &vars, f).unwrap();
        let p = Point::from_values(&vars, f, vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)])
            .unwrap();
        let r = jacobian_rank(&[g1.clone(), g2.clone()], &p).unwrap();
        let scaled = vec![g1.scale(&f.from_i64(5)), g2.scale(&f.from_i64(-7))];
        assert_eq!(jacobian_rank(&scaled, &p).unwrap(), r);
        assert!(r <= 2);
    }
}

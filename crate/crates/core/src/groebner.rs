//! Reduced Gröbner bases via Buchberger's algorithm.
//!
//! Pair selection follows the normal strategy (minimal lcm degree first)
//! with Gebauer–Möller pair elimination; tie-breaking is lexicographic on
//! internal generator indices, so output is deterministic for a fixed
//! input and order. Coefficient growth over the rationals is kept in check
//! by removing integer content after each reduction.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::vars::{same_vars, Vars};

/// Wall-clock budget for a single computation. `unlimited` never trips.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget { deadline: None }
    }

    pub fn from_secs_f64(secs: f64) -> Self {
        Budget {
            deadline: Some(Instant::now() + Duration::from_secs_f64(secs.max(0.0))),
        }
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::BudgetExceeded),
            _ => Ok(()),
        }
    }
}

type Term = (Monomial, Coeff);

/// A basis element with its terms sorted ascending under the active order,
/// leading term last.
struct Reducer {
    terms: Vec<Term>,
    lt: Monomial,
    lc: Coeff,
}

impl Reducer {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Option<Reducer> {
        if p.is_zero() {
            return None;
        }
        let mut terms = p.terms_sorted(order);
        terms.reverse(); // ascending
        let (lt, lc) = terms.last().cloned().unwrap();
        Some(Reducer { terms, lt, lc })
    }
}

fn merge_sub(
    a: &[Term],
    b: &[Term],
    f: &CoefficientField,
    order: &MonomialOrder,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match order.compare(&a[i].0, &b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0.clone(), f.neg(&b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = f.sub(&a[i].1, &b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for (m, c) in &b[j..] {
        out.push((m.clone(), f.neg(c)));
    }
    out
}

/// Fully reduces `work` (ascending term list) against the reducers,
/// returning the remainder as an ascending term list.
fn reduce_terms(
    mut work: Vec<Term>,
    reducers: &[Reducer],
    f: &CoefficientField,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<Term>> {
    let mut out: Vec<Term> = Vec::new(); // collected descending
    'outer: while let Some((ltm, ltc)) = work.last() {
        budget.check()?;
        for red in reducers {
            if red.lt.divides(ltm) {
                let shift = red.lt.div(ltm);
                let mult = f.div(ltc, &red.lc)?;
                let mut scaled = Vec::with_capacity(red.terms.len());
                for (m, c) in &red.terms {
                    scaled.push((m.mul(&shift)?, f.mul(c, &mult)));
                }
                work = merge_sub(&work, &scaled, f, order);
                continue 'outer;
            }
        }
        out.push(work.pop().unwrap());
    }
    out.reverse();
    Ok(out)
}

fn terms_to_poly(vars: &Vars, field: CoefficientField, mut asc: Vec<Term>) -> Polynomial {
    // Re-sort into the canonical storage order.
    asc.sort_by(|a, b| MonomialOrder::GrevLex.compare(&b.0, &a.0));
    Polynomial::from_canonical_terms(vars, field, asc)
}

/// Removes rational content (making coefficients coprime integers with a
/// positive leading coefficient under `order`); makes prime-field
/// polynomials monic. Identity on zero.
fn normalize_scale(p: &Polynomial, order: &MonomialOrder) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    match p.field() {
        CoefficientField::Prime(_) => p.monic(order).expect("nonzero"),
        CoefficientField::Rationals => {
            let mut num_gcd = BigInt::zero();
            let mut den_lcm = BigInt::one();
            for (_, c) in p.terms() {
                let Coeff::Rat(r) = c else { unreachable!() };
                num_gcd = num_gcd.gcd(r.numer());
                den_lcm = den_lcm.lcm(r.denom());
            }
            let mut scale = num_rational::BigRational::new(den_lcm, num_gcd);
            if let Some((_, Coeff::Rat(lc))) = p.leading_term(order) {
                if (lc * &scale).is_negative() {
                    scale = -scale;
                }
            }
            p.scale(&Coeff::Rat(scale))
        }
    }
}

/// The standard S-polynomial; the leading terms of the two monic-scaled
/// multiples cancel.
pub fn s_polynomial(
    f: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.field() != g.field() {
        return Err(Error::FieldMismatch);
    }
    if !same_vars(f.vars(), g.vars()) {
        return Err(Error::VarSetMismatch);
    }
    let k = f.field();
    let (ltf, lcf) = f.leading_term(order).unwrap();
    let (ltg, lcg) = g.leading_term(order).unwrap();
    let lcm = ltf.lcm(ltg);
    let mf = ltf.div(&lcm);
    let mg = ltg.div(&lcm);
    let shift_f = monomial_poly(f.vars(), k, &mf)?.scale(&k.inv(lcf)?);
    let shift_g = monomial_poly(g.vars(), k, &mg)?.scale(&k.inv(lcg)?);
    shift_f.mul(f)?.sub(&shift_g.mul(g)?)
}

fn monomial_poly(vars: &Vars, field: CoefficientField, m: &Monomial) -> Result<Polynomial> {
    Ok(Polynomial::from_terms(
        vars,
        field,
        [(m.clone(), field.one())],
    ))
}

/// Remainder of multivariate division of `f` by the list `gens` under
/// `order`: no term of the result is divisible by any leading term of a
/// nonzero generator, and `f - result` lies in the generated ideal.
pub fn normal_form(
    f: &Polynomial,
    gens: &[Polynomial],
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Polynomial> {
    for g in gens {
        if g.field() != f.field() {
            return Err(Error::FieldMismatch);
        }
        if !same_vars(g.vars(), f.vars()) {
            return Err(Error::VarSetMismatch);
        }
    }
    let reducers: Vec<Reducer> = gens
        .iter()
        .filter_map(|g| Reducer::from_poly(g, order))
        .collect();
    let mut work = f.terms_sorted(order);
    work.reverse();
    let rem = reduce_terms(work, &reducers, &f.field(), order, budget)?;
    Ok(terms_to_poly(f.vars(), f.field(), rem))
}

/// A Gröbner basis together with the order it was computed under.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    vars: Vars,
    field: CoefficientField,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    /// True when the basis generates the unit ideal.
    pub fn is_unit_ideal(&self) -> bool {
        self.gens.iter().any(|g| !g.is_zero() && g.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .filter_map(|g| g.leading_term(&self.order).map(|(m, _)| m.clone()))
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial, budget: &Budget) -> Result<Polynomial> {
        normal_form(f, &self.gens, &self.order, budget)
    }

    /// `f` lies in the ideal iff its normal form vanishes.
    pub fn contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if f.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if !same_vars(f.vars(), &self.vars) {
            return Err(Error::VarSetMismatch);
        }
        Ok(self.normal_form(f, budget)?.is_zero())
    }
}

/// Critical-pair selection strategy. Either way the reduced basis is the
/// same; only the work order differs.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SelectionStrategy {
    /// Minimal lcm total degree first.
    #[default]
    Normal,
    /// Minimal sugar degree first, lcm degree as tie-breaker.
    Sugar,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`
/// under the normal selection strategy.
pub fn buchberger(
    gens: &[Polynomial],
    vars: &Vars,
    field: CoefficientField,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    buchberger_with_strategy(gens, vars, field, order, SelectionStrategy::Normal, budget)
}

/// `f` lies in the ideal presented by the (reduced) basis iff its normal
/// form vanishes.
pub fn ideal_membership(f: &Polynomial, basis: &GroebnerBasis, budget: &Budget) -> Result<bool> {
    basis.contains(f, budget)
}

pub fn buchberger_with_strategy(
    gens: &[Polynomial],
    vars: &Vars,
    field: CoefficientField,
    order: &MonomialOrder,
    strategy: SelectionStrategy,
    budget: &Budget,
) -> Result<GroebnerBasis> {
    for g in gens {
        if g.field() != field {
            return Err(Error::FieldMismatch);
        }
        if !same_vars(g.vars(), vars) {
            return Err(Error::VarSetMismatch);
        }
    }
    budget.check()?;
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut sugars: Vec<u32> = Vec::new();
    let mut reducers: Vec<Reducer> = Vec::new();
    // Pairs keyed (primary, secondary, i, j): lcm degree under the normal
    // strategy, sugar then lcm degree under the sugar strategy, with
    // deterministic index tie-breaking either way.
    let mut pairs: BTreeSet<(u32, u32, usize, usize)> = BTreeSet::new();

    let pair_sugar = |sugars: &[u32], reducers: &[Reducer], lcm: &Monomial, i: usize, j: usize| {
        let si = sugars[i] + lcm.total_degree() - reducers[i].lt.total_degree();
        let sj = sugars[j] + lcm.total_degree() - reducers[j].lt.total_degree();
        si.max(sj)
    };

    let add_element = |basis: &mut Vec<Polynomial>,
                       sugars: &mut Vec<u32>,
                       reducers: &mut Vec<Reducer>,
                       pairs: &mut BTreeSet<(u32, u32, usize, usize)>,
                       p: Polynomial,
                       sugar: u32| {
        let k = basis.len();
        let red = Reducer::from_poly(&p, order).expect("nonzero basis element");
        let lt_k = red.lt.clone();
        basis.push(p);
        sugars.push(sugar);
        reducers.push(red);

        // Gebauer–Möller update. Candidate new pairs (i, k):
        let lcms: Vec<Monomial> = reducers[..k].iter().map(|r| r.lt.lcm(&lt_k)).collect();
        let mut keep: Vec<bool> = vec![false; k];
        let mut in_d: Vec<bool> = vec![false; k];
        for i in 0..k {
            // Candidate (i,k) survives when coprime (kept as an eliminator,
            // discarded before pairing) or when no unprocessed candidate and
            // no surviving one divides its lcm.
            let coprime = reducers[i].lt.coprime(&lt_k);
            let dominated = (i + 1..k).any(|j| lcms[j].divides(&lcms[i]))
                || (0..i).any(|j| in_d[j] && lcms[j].divides(&lcms[i]));
            if coprime || !dominated {
                in_d[i] = true;
                keep[i] = !coprime;
            }
        }
        // Prune old pairs by the chain criterion.
        let stale: Vec<(u32, u32, usize, usize)> = pairs
            .iter()
            .filter(|(_, _, i, j)| {
                let lcm_ij = reducers[*i].lt.lcm(&reducers[*j].lt);
                lt_k.divides(&lcm_ij) && lcms[*i] != lcm_ij && lcms[*j] != lcm_ij
            })
            .cloned()
            .collect();
        for s in stale {
            pairs.remove(&s);
        }
        for i in 0..k {
            if keep[i] {
                let key = match strategy {
                    SelectionStrategy::Normal => (lcms[i].total_degree(), 0, i, k),
                    SelectionStrategy::Sugar => (
                        pair_sugar(sugars, reducers, &lcms[i], i, k),
                        lcms[i].total_degree(),
                        i,
                        k,
                    ),
                };
                pairs.insert(key);
            }
        }
    };

    for g in gens {
        if g.is_zero() {
            continue;
        }
        budget.check()?;
        // Reduce each incoming generator against what we already have, so
        // duplicate and dependent inputs do not inflate the basis.
        let work = {
            let mut t = g.terms_sorted(order);
            t.reverse();
            t
        };
        let rem = reduce_terms(work, &reducers, &field, order, budget)?;
        if rem.is_empty() {
            continue;
        }
        let p = normalize_scale(&terms_to_poly(vars, field, rem), order);
        let sugar = g.total_degree().max(p.total_degree());
        add_element(&mut basis, &mut sugars, &mut reducers, &mut pairs, p, sugar);
    }

    while let Some(&key) = pairs.iter().next() {
        pairs.remove(&key);
        let (_, _, i, j) = key;
        budget.check()?;
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let lcm = reducers[i].lt.lcm(&reducers[j].lt);
        let sugar = pair_sugar(&sugars, &reducers, &lcm, i, j);
        let work = {
            let mut t = s.terms_sorted(order);
            t.reverse();
            t
        };
        let rem = reduce_terms(work, &reducers, &field, order, budget)?;
        if rem.is_empty() {
            continue;
        }
        let p = normalize_scale(&terms_to_poly(vars, field, rem), order);
        let sugar = sugar.max(p.total_degree());
        add_element(&mut basis, &mut sugars, &mut reducers, &mut pairs, p, sugar);
    }

    let gens = inter_reduce(basis, vars, field, order, budget)?;
    Ok(GroebnerBasis {
        vars: vars.clone(),
        field,
        gens,
        order: order.clone(),
        reduced: true,
    })
}

/// Minimalizes and autoreduces a Gröbner basis, returning monic generators
/// sorted by leading monomial descending.
fn inter_reduce(
    basis: Vec<Polynomial>,
    _vars: &Vars,
    _field: CoefficientField,
    order: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<Polynomial>> {
    let mut elems: Vec<Polynomial> = basis.into_iter().filter(|p| !p.is_zero()).collect();
    if elems.is_empty() {
        return Ok(Vec::new());
    }
    // Minimal generating set of the leading-term ideal: visit by ascending
    // leading monomial so divisors are seen before multiples.
    let mut idx: Vec<usize> = (0..elems.len()).collect();
    idx.sort_by(|&a, &b| {
        order
            .compare(
                elems[a].leading_term(order).unwrap().0,
                elems[b].leading_term(order).unwrap().0,
            )
            .then(a.cmp(&b))
    });
    let mut kept: Vec<Polynomial> = Vec::new();
    for &i in &idx {
        let lt = elems[i].leading_term(order).unwrap().0.clone();
        if !kept
            .iter()
            .any(|k| k.leading_term(order).unwrap().0.divides(&lt))
        {
            kept.push(elems[i].clone());
        }
    }
    elems = kept;
    // Autoreduce tails until stable.
    loop {
        let mut changed = false;
        for i in 0..elems.len() {
            budget.check()?;
            let others: Vec<Polynomial> = elems
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let r = normal_form(&elems[i], &others, order, budget)?;
            debug_assert!(!r.is_zero(), "minimal basis element reduced to zero");
            if r != elems[i] {
                elems[i] = normalize_scale(&r, order);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for e in elems.iter_mut() {
        *e = e.monic(order)?;
    }
    elems.sort_by(|a, b| {
        order.compare(
            b.leading_term(order).unwrap().0,
            a.leading_term(order).unwrap().0,
        )
    });
    Ok(elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VariableSet;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    fn setup() -> (Vars, CoefficientField) {
        (VariableSet::new(["x", "y"]).unwrap(), q())
    }

    fn p(s: &str, v: &Vars, f: CoefficientField) -> Polynomial {
        Polynomial::parse(s, v, f).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let (v, f) = setup();
        let b = Budget::unlimited();
        let lex = MonomialOrder::Lex;
        let nf = normal_form(&p("x^2", &v, f), &[p("x^2 - y", &v, f)], &lex, &b).unwrap();
        assert_eq!(nf, p("y", &v, f));

        let nf2 = normal_form(
            &p("x^2*y^2 - 1", &v, f),
            &[p("x*y - 1", &v, f)],
            &MonomialOrder::GrevLex,
            &b,
        )
        .unwrap();
        assert!(nf2.is_zero());

        let g = p("x^3 - 2*y", &v, f);
        let nf3 = normal_form(&g, &[], &lex, &b).unwrap();
        assert_eq!(nf3, g);
    }

    #[test]
    fn s_polynomial_examples() {
        let (v, f) = setup();
        let lex = MonomialOrder::Lex;
        let s = s_polynomial(&p("x^2 - y", &v, f), &p("x*y - 1", &v, f), &lex).unwrap();
        assert_eq!(s, p("x - y^2", &v, f));

        let g = p("x^2 - y", &v, f);
        assert!(s_polynomial(&g, &g, &lex).unwrap().is_zero());
        assert!(s_polynomial(&g, &Polynomial::zero(&v, f), &lex).is_err());

        // Coprime leading terms: S(x, y) reduces to zero against {x, y}.
        let s2 = s_polynomial(&p("x", &v, f), &p("y", &v, f), &lex).unwrap();
        let b = Budget::unlimited();
        let nf = normal_form(&s2, &[p("x", &v, f), p("y", &v, f)], &lex, &b).unwrap();
        assert!(nf.is_zero());
    }

    #[test]
    fn buchberger_hand_example() {
        let (v, f) = setup();
        let b = Budget::unlimited();
        let lex = MonomialOrder::Lex;
        let gb = buchberger(
            &[p("x^2 - y", &v, f), p("x*y - 1", &v, f)],
            &v,
            f,
            &lex,
            &b,
        )
        .unwrap();
        assert_eq!(gb.gens(), &[p("x - y^2", &v, f), p("y^3 - 1", &v, f)]);
        assert!(gb.is_reduced());
    }

    #[test]
    fn degenerate_ideals() {
        let (v, f) = setup();
        let b = Budget::unlimited();
        let gb = buchberger(&[Polynomial::zero(&v, f)], &v, f, &MonomialOrder::GrevLex, &b)
            .unwrap();
        assert!(gb.gens().is_empty());
        assert!(!gb.is_unit_ideal());

        let gb1 = buchberger(&[p("1", &v, f)], &v, f, &MonomialOrder::GrevLex, &b).unwrap();
        assert_eq!(gb1.gens(), &[p("1", &v, f)]);
        assert!(gb1.is_unit_ideal());
    }

    #[test]
    fn membership_examples() {
        let (v, f) = setup();
        let b = Budget::unlimited();
        let order = MonomialOrder::GrevLex;
        let gb = buchberger(&[p("x^2", &v, f)], &v, f, &order, &b).unwrap();
        assert!(!gb.contains(&p("x", &v, f), &b).unwrap());
        assert!(gb.contains(&Polynomial::zero(&v, f), &b).unwrap());
        assert!(gb.contains(&p("x^3 + x^2*y", &v, f), &b).unwrap());
    }

    #[test]
    fn membership_in_bordered_rank_one_ideal() {
        // u1*v1 lies in the ideal generated by the rank-one bordering
        // relations specialized at t = 1.
        let v = VariableSet::new(["x11", "y11", "u1", "v1", "t1", "t2", "t"]).unwrap();
        let f = q();
        let b = Budget::unlimited();
        let gens = [
            p("-t*u1*v1", &v, f),
            p("x11*u1 - t1*u1", &v, f),
            p("v1*y11 - v1*t2", &v, f),
            p("t - 1", &v, f),
        ];
        let gb = buchberger(&gens, &v, f, &MonomialOrder::GrevLex, &b).unwrap();
        assert!(gb.contains(&p("u1*v1", &v, f), &b).unwrap());
    }

    #[test]
    fn strategies_agree_on_the_reduced_basis() {
        let (v, f) = setup();
        let b = Budget::unlimited();
        let gens = [
            p("x^2*y - 2*x + 1", &v, f),
            p("x*y^2 - y", &v, f),
            p("x^3 - y^3", &v, f),
        ];
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            let normal =
                buchberger_with_strategy(&gens, &v, f, &order, SelectionStrategy::Normal, &b)
                    .unwrap();
            let sugar =
                buchberger_with_strategy(&gens, &v, f, &order, SelectionStrategy::Sugar, &b)
                    .unwrap();
            assert_eq!(normal.gens(), sugar.gens());
        }
    }

    #[test]
    fn budget_trips() {
        let (v, f) = setup();
        let b = Budget::from_secs_f64(0.0);
        let r = buchberger(
            &[p("x^2 - y", &v, f), p("x*y - 1", &v, f)],
            &v,
            f,
            &MonomialOrder::Lex,
            &b,
        );
        assert_eq!(r.unwrap_err(), Error::BudgetExceeded);
    }
}

//! Sparse exact multivariate polynomials.
//!
//! Terms are stored with no zero coefficients and no duplicate monomials,
//! sorted descending under a fixed canonical order (grevlex) so that
//! structural equality is term-list equality. Operations that need a
//! different active order re-sort on entry.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::monomial::{Monomial, MonomialOrder};
use crate::point::Point;
use crate::vars::{same_vars, Vars};

mod parse;

const CANONICAL: MonomialOrder = MonomialOrder::GrevLex;

/// Image of one variable under a specialization.
#[derive(Clone, Debug)]
pub enum VarImage {
    /// Maps to a variable of the target set.
    Var(usize),
    /// Maps to a constant of the target field.
    Const(Coeff),
}

/// A sparse polynomial over a shared variable set and coefficient field.
#[derive(Clone, Debug)]
pub struct Polynomial {
    vars: Vars,
    field: CoefficientField,
    terms: Vec<(Monomial, Coeff)>,
}

impl Polynomial {
    pub fn zero(vars: &Vars, field: CoefficientField) -> Self {
        Polynomial {
            vars: vars.clone(),
            field,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: &Vars, field: CoefficientField, c: Coeff) -> Self {
        debug_assert!(field.owns(&c));
        if c.is_zero() {
            return Self::zero(vars, field);
        }
        Polynomial {
            vars: vars.clone(),
            field,
            terms: vec![(Monomial::one(vars.len()), c)],
        }
    }

    pub fn from_i64(vars: &Vars, field: CoefficientField, n: i64) -> Self {
        Self::constant(vars, field, field.from_i64(n))
    }

    /// The polynomial `name` (a single variable).
    pub fn var(vars: &Vars, field: CoefficientField, name: &str) -> Result<Self> {
        let idx = vars.require(name)?;
        Ok(Polynomial {
            vars: vars.clone(),
            field,
            terms: vec![(Monomial::var(vars.len(), idx), field.one())],
        })
    }

    /// Normalizes an arbitrary term soup: combines duplicate monomials,
    /// drops zeros, sorts canonically.
    pub fn from_terms(
        vars: &Vars,
        field: CoefficientField,
        terms: impl IntoIterator<Item = (Monomial, Coeff)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), vars.len());
            debug_assert!(field.owns(&c));
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let s = field.add(e.get(), &c);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Coeff)> = acc.into_iter().collect();
        terms.sort_by(|a, b| CANONICAL.compare(&b.0, &a.0));
        Polynomial {
            vars: vars.clone(),
            field,
            terms,
        }
    }

    /// Builds from terms already known to be distinct, zero-free and sorted
    /// descending under the canonical order.
    pub(crate) fn from_canonical_terms(
        vars: &Vars,
        field: CoefficientField,
        terms: Vec<(Monomial, Coeff)>,
    ) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| CANONICAL.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            vars: vars.clone(),
            field,
            terms,
        }
    }

    pub fn parse(text: &str, vars: &Vars, field: CoefficientField) -> Result<Self> {
        parse::parse_polynomial(text, vars, field)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if !same_vars(&self.vars, &other.vars) {
            return Err(Error::VarSetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    /// Merge of two canonically sorted term lists; `negate` subtracts.
    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match CANONICAL.compare(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let (m, c) = &other.terms[j];
                    out.push((m.clone(), if negate { f.neg(c) } else { c.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        f.sub(&self.terms[i].1, &other.terms[j].1)
                    } else {
                        f.add(&self.terms[i].1, &other.terms[j].1)
                    };
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for (m, c) in &other.terms[j..] {
            out.push((m.clone(), if negate { f.neg(c) } else { c.clone() }));
        }
        Polynomial {
            vars: self.vars.clone(),
            field: self.field,
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let f = &self.field;
        Polynomial {
            vars: self.vars.clone(),
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), f.neg(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.vars, self.field));
        }
        let f = &self.field;
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb)?;
                let c = f.mul(ca, cb);
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let s = f.add(e.get(), &c);
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, Coeff)> = acc.into_iter().collect();
        terms.sort_by(|a, b| CANONICAL.compare(&b.0, &a.0));
        Ok(Polynomial {
            vars: self.vars.clone(),
            field: self.field,
            terms,
        })
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars, self.field);
        }
        let f = &self.field;
        Polynomial {
            vars: self.vars.clone(),
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), f.mul(k, c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Result<Polynomial> {
        let mut acc = Polynomial::constant(&self.vars, self.field, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Formal partial derivative with respect to the named variable.
    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let idx = self.vars.require(var)?;
        Ok(self.partial_derivative_idx(idx))
    }

    pub fn partial_derivative_idx(&self, idx: usize) -> Polynomial {
        let f = &self.field;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(idx);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[idx] -= 1;
            let coeff = f.mul(c, &f.from_i64(e as i64));
            if !coeff.is_zero() {
                terms.push((Monomial::from_exps(&exps), coeff));
            }
        }
        Polynomial::from_terms(&self.vars, self.field, terms)
    }

    /// Exact evaluation at a total point. A ring homomorphism.
    pub fn evaluate(&self, p: &Point) -> Result<Coeff> {
        if p.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        if !same_vars(&self.vars, p.vars()) {
            return Err(Error::VarSetMismatch);
        }
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &coeff_pow(f, p.value(i), e));
                }
            }
            acc = f.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Applies a variable-wise specialization (rename / constant), producing
    /// a polynomial on `target`. `images[i]` describes the image of the
    /// `i`-th source variable.
    pub fn specialize(&self, target: &Vars, images: &[VarImage]) -> Result<Polynomial> {
        if images.len() != self.vars.len() {
            return Err(Error::VarSetMismatch);
        }
        let f = &self.field;
        let mut terms = Vec::with_capacity(self.terms.len());
        'term: for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            let mut coeff = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match &images[i] {
                    VarImage::Var(j) => {
                        exps[*j] = exps[*j].checked_add(e).ok_or(Error::ExponentOverflow)?;
                    }
                    VarImage::Const(k) => {
                        if k.is_zero() {
                            continue 'term;
                        }
                        coeff = f.mul(&coeff, &coeff_pow(f, k, e));
                    }
                }
            }
            terms.push((Monomial::from_exps(&exps), coeff));
        }
        Ok(Polynomial::from_terms(target, self.field, terms))
    }

    /// Full ring-homomorphism application: every source variable is replaced
    /// by a target polynomial. All images must share one variable set and
    /// the source field.
    pub fn compose(&self, target: &Vars, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.vars.len() {
            return Err(Error::VarSetMismatch);
        }
        for img in images {
            if img.field != self.field {
                return Err(Error::FieldMismatch);
            }
            if !same_vars(&img.vars, target) {
                return Err(Error::VarSetMismatch);
            }
        }
        let mut acc = Polynomial::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, self.field, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32)?)?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Leading term under the given order, if nonzero.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        if matches!(order, MonomialOrder::GrevLex) {
            return self.terms.first().map(|(m, c)| (m, c));
        }
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0))
            .map(|(m, c)| (m, c))
    }

    /// Terms sorted descending under `order` (clones).
    pub fn terms_sorted(&self, order: &MonomialOrder) -> Vec<(Monomial, Coeff)> {
        let mut t = self.terms.clone();
        if !matches!(order, MonomialOrder::GrevLex) {
            t.sort_by(|a, b| order.compare(&b.0, &a.0));
        }
        t
    }

    /// Scales so the leading coefficient under `order` is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Result<Polynomial> {
        match self.leading_term(order) {
            None => Ok(self.clone()),
            Some((_, lc)) => {
                let inv = self.field.inv(lc)?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Renders with terms sorted descending under `order`.
    pub fn render(&self, order: &MonomialOrder) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let sorted = self.terms_sorted(order);
        let mut out = String::new();
        for (i, (m, c)) in sorted.iter().enumerate() {
            let (neg, abs) = coeff_sign_abs(c);
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = abs;
            if m.is_one() {
                out.push_str(&coeff_str);
            } else if coeff_str == "1" {
                out.push_str(&m.render(&self.vars));
            } else {
                out.push_str(&coeff_str);
                out.push('*');
                out.push_str(&m.render(&self.vars));
            }
        }
        out
    }
}

fn coeff_pow(f: &CoefficientField, base: &Coeff, e: u16) -> Coeff {
    let mut acc = f.one();
    let mut b = base.clone();
    let mut e = e as u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = f.mul(&acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = f.mul(&b, &b);
        }
    }
    acc
}

/// Splits a coefficient into (is_negative, absolute-value rendering).
/// Prime-field residues are never negative.
fn coeff_sign_abs(c: &Coeff) -> (bool, String) {
    match c {
        Coeff::Rat(x) => {
            use num_traits::Signed;
            if x.is_negative() {
                (true, format_rat(&-x))
            } else {
                (false, format_rat(x))
            }
        }
        Coeff::Fp(v) => (false, v.to_string()),
    }
}

fn format_rat(x: &num_rational::BigRational) -> String {
    use num_traits::One;
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && same_vars(&self.vars, &other.vars)
            && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&CANONICAL))
    }
}

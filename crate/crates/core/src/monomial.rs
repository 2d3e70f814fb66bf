//! Monomials as exponent vectors, and total orders on them.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::vars::Vars;

type Exps = SmallVec<[u16; 24]>;

/// A monomial over a fixed variable set: one exponent per variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exps,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: smallvec::smallvec![0; nvars],
        }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[index] = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial { exps }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit mask of the variables appearing with positive exponent.
    /// Supports at most 128 variables.
    pub fn support_mask(&self) -> Result<u128> {
        if self.exps.len() > 128 {
            return Err(Error::TooManyVariables(self.exps.len()));
        }
        let mut mask = 0u128;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                mask |= 1u128 << i;
            }
        }
        Ok(mask)
    }

    /// Raises the monomial to a small power.
    pub fn pow(&self, k: u16) -> Result<Monomial> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for &e in &self.exps {
            exps.push(e.checked_mul(k).ok_or(Error::ExponentOverflow)?);
        }
        Ok(Monomial { exps })
    }

    /// Renders the monomial against its variable set, e.g. `x11^2*y12`.
    pub fn render(&self, vars: &Vars) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(vars.name(i).to_string()),
                _ => parts.push(format!("{}^{}", vars.name(i), e)),
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.exps
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

/// A multiplicative total order on monomials with 1 minimal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MonomialOrder {
    /// Lexicographic, earlier variables dominate.
    Lex,
    /// Graded reverse lexicographic.
    GrevLex,
    /// Elimination order: the `front` block (variable indices) is compared
    /// by grevlex first; ties fall through to `inner` on the remaining
    /// variables. Any monomial involving a front variable exceeds every
    /// monomial free of them.
    Block {
        front: Vec<usize>,
        inner: Box<MonomialOrder>,
    },
}

impl MonomialOrder {
    /// Builds a block elimination order with the given front variables.
    pub fn block(mut front: Vec<usize>, inner: MonomialOrder) -> Self {
        front.sort_unstable();
        front.dedup();
        MonomialOrder::Block {
            front,
            inner: Box::new(inner),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Lex => lex_cmp_slices(a.exps(), b.exps()),
            MonomialOrder::GrevLex => grevlex_cmp_slices(a.exps(), b.exps()),
            MonomialOrder::Block { front, inner } => {
                let fa = project(a.exps(), front);
                let fb = project(b.exps(), front);
                match grevlex_cmp_slices(&fa, &fb) {
                    Ordering::Equal => {
                        let rest: Vec<usize> = (0..a.nvars())
                            .filter(|i| front.binary_search(i).is_err())
                            .collect();
                        let ra = project(a.exps(), &rest);
                        let rb = project(b.exps(), &rest);
                        match inner.as_ref() {
                            MonomialOrder::Lex => lex_cmp_slices(&ra, &rb),
                            MonomialOrder::GrevLex => grevlex_cmp_slices(&ra, &rb),
                            MonomialOrder::Block { .. } => {
                                // Nested blocks are not used by the engine.
                                grevlex_cmp_slices(&ra, &rb)
                            }
                        }
                    }
                    ord => ord,
                }
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.compare(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::GrevLex => write!(f, "grevlex"),
            MonomialOrder::Block { front, inner } => {
                write!(f, "block({front:?}; {inner})")
            }
        }
    }
}

fn project(exps: &[u16], indices: &[usize]) -> Exps {
    indices.iter().map(|&i| exps[i]).collect()
}

fn lex_cmp_slices(a: &[u16], b: &[u16]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp_slices(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // Equal degree: smaller exponent in the last differing variable wins.
    for (x, y) in a.iter().zip(b).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16]) -> Monomial {
        Monomial::from_exps(exps)
    }

    #[test]
    fn grevlex_standard_example() {
        // x^2*y vs x*y^2 with x > y
        assert_eq!(
            MonomialOrder::GrevLex.compare(&m(&[2, 1]), &m(&[1, 2])),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_low_degree_dominates() {
        // y^5 vs x under lex x > y
        assert_eq!(
            MonomialOrder::Lex.compare(&m(&[0, 5]), &m(&[1, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn equal_monomials_compare_equal() {
        for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            assert_eq!(order.compare(&m(&[3, 1, 2]), &m(&[3, 1, 2])), Ordering::Equal);
        }
    }

    #[test]
    fn block_order_eliminates_front() {
        let order = MonomialOrder::block(vec![0], MonomialOrder::GrevLex);
        // t beats any monomial in the remaining variables
        assert_eq!(order.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        // among front-free monomials the inner order decides
        assert_eq!(order.compare(&m(&[0, 2, 1]), &m(&[0, 1, 2])), Ordering::Greater);
    }

    #[test]
    fn divide_and_lcm() {
        let a = m(&[2, 0, 1]);
        let b = m(&[2, 3, 1]);
        assert!(a.divides(&b));
        assert_eq!(a.div(&b), m(&[0, 3, 0]));
        assert_eq!(a.lcm(&m(&[1, 4, 0])), m(&[2, 4, 1]));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 2, 1])));
    }
}

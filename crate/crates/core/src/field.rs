//! Coefficient fields: the rationals and odd prime fields.
//!
//! All arithmetic is exact. Rational elements are arbitrary-precision
//! normalized fractions; prime-field elements are residues in `[0, p)`
//! with inverses computed by the extended Euclidean algorithm.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Descriptor of the active coefficient field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CoefficientField {
    /// The field of rational numbers (characteristic 0).
    Rationals,
    /// The prime field `F_p` for an odd prime `p`.
    Prime(u64),
}

/// Default prime for prime-field runs: large enough for pairwise-distinct
/// eigenvalue tuples, small enough for fast word arithmetic.
pub const DEFAULT_PRIME: u64 = 32003;

impl CoefficientField {
    /// Builds a prime-field descriptor, rejecting non-primes and 2.
    pub fn prime(p: u64) -> Result<Self> {
        if p > 2 && is_prime_u64(p) {
            Ok(CoefficientField::Prime(p))
        } else {
            Err(Error::InvalidCharacteristic(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            CoefficientField::Rationals => 0,
            CoefficientField::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rat(BigRational::zero()),
            CoefficientField::Prime(_) => Coeff::Fp(0),
        }
    }

    pub fn one(&self) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rat(BigRational::one()),
            CoefficientField::Prime(_) => Coeff::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            CoefficientField::Rationals => Coeff::Rat(BigRational::from(BigInt::from(n))),
            CoefficientField::Prime(p) => Coeff::Fp(i64_mod(n, *p)),
        }
    }

    /// Embeds `num/den`. Fails over `F_p` when `p | den`.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Coeff> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            CoefficientField::Rationals => {
                Ok(Coeff::Rat(BigRational::new(num.clone(), den.clone())))
            }
            CoefficientField::Prime(p) => {
                let pn = BigInt::from(*p);
                let d = bigint_mod(den, &pn, *p);
                if d == 0 {
                    return Err(Error::NonRepresentableCoefficient(format!("{num}/{den}")));
                }
                let n = bigint_mod(num, &pn, *p);
                Ok(Coeff::Fp(mul_mod(n, inv_mod(d, *p)?, *p)))
            }
        }
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x + y),
            (CoefficientField::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(add_mod(*x, *y, *p))
            }
            _ => unreachable!("coefficient kind does not match field"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x - y),
            (CoefficientField::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(add_mod(*x, *p - *y % *p, *p))
            }
            _ => unreachable!("coefficient kind does not match field"),
        }
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (CoefficientField::Rationals, Coeff::Rat(x), Coeff::Rat(y)) => Coeff::Rat(x * y),
            (CoefficientField::Prime(p), Coeff::Fp(x), Coeff::Fp(y)) => {
                Coeff::Fp(mul_mod(*x, *y, *p))
            }
            _ => unreachable!("coefficient kind does not match field"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (CoefficientField::Rationals, Coeff::Rat(x)) => Coeff::Rat(-x),
            (CoefficientField::Prime(p), Coeff::Fp(x)) => {
                Coeff::Fp(if *x == 0 { 0 } else { *p - *x })
            }
            _ => unreachable!("coefficient kind does not match field"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        match (self, a) {
            (CoefficientField::Rationals, Coeff::Rat(x)) => {
                if x.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Coeff::Rat(x.recip()))
                }
            }
            (CoefficientField::Prime(p), Coeff::Fp(x)) => Ok(Coeff::Fp(inv_mod(*x, *p)?)),
            _ => unreachable!("coefficient kind does not match field"),
        }
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Checks that a coefficient was produced by this field.
    pub fn owns(&self, a: &Coeff) -> bool {
        matches!(
            (self, a),
            (CoefficientField::Rationals, Coeff::Rat(_)) | (CoefficientField::Prime(_), Coeff::Fp(_))
        )
    }
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "q"),
            CoefficientField::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

/// An element of the active coefficient field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Coeff {
    Rat(BigRational),
    Fp(u64),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Rat(x) => x.is_zero(),
            Coeff::Fp(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Rat(x) => x.is_one(),
            Coeff::Fp(x) => *x == 1,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Rat(x) => {
                if x.denom().is_one() {
                    write!(f, "{}", x.numer())
                } else {
                    write!(f, "{}/{}", x.numer(), x.denom())
                }
            }
            Coeff::Fp(x) => write!(f, "{x}"),
        }
    }
}

fn i64_mod(n: i64, p: u64) -> u64 {
    let r = n.rem_euclid(p as i64);
    r as u64
}

fn bigint_mod(n: &BigInt, p_big: &BigInt, p: u64) -> u64 {
    let mut r = n % p_big;
    if r.is_negative() {
        r += p_big;
    }
    let digits = r.to_u64_digits().1;
    debug_assert!(digits.len() <= 1);
    let v = digits.first().copied().unwrap_or(0);
    v % p
}

pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Modular inverse by the extended Euclidean algorithm.
pub(crate) fn inv_mod(a: u64, p: u64) -> Result<u64> {
    if a % p == 0 {
        return Err(Error::DivisionByZero);
    }
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "p must be prime");
    Ok(s0.rem_euclid(p as i128) as u64)
}

/// Deterministic Miller–Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // Witness set sufficient for all n < 2^64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_constructor_rejects_composites_and_two() {
        assert!(CoefficientField::prime(32003).is_ok());
        assert!(CoefficientField::prime(2).is_err());
        assert!(CoefficientField::prime(32001).is_err());
        assert!(CoefficientField::prime(0).is_err());
        assert!(CoefficientField::prime(1).is_err());
    }

    #[test]
    fn fp_arithmetic_round_trips() {
        let f = CoefficientField::prime(7).unwrap();
        let a = f.from_i64(-3); // 4 mod 7
        assert_eq!(a, Coeff::Fp(4));
        let inv = f.inv(&a).unwrap();
        assert!(f.mul(&a, &inv).is_one());
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn ratio_embedding_detects_bad_denominator() {
        let f = CoefficientField::prime(7).unwrap();
        let num = BigInt::from(1);
        let den = BigInt::from(14);
        assert!(matches!(
            f.from_ratio(&num, &den),
            Err(Error::NonRepresentableCoefficient(_))
        ));
        let q = CoefficientField::Rationals;
        let half = q.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert!(q.mul(&half, &q.from_i64(2)).is_one());
    }
}

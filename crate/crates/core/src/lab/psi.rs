//! Seeded sampling of the eigenvalue parametrization of the bordered
//! commuting tuples, and exact membership of the samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::lab::build::{uname, vname, xname, yname};
use crate::lab::points::jsecond_ideal;
use crate::lab::report::{params_from, run_check, Status, VerificationReport};
use crate::matrix::Mat;
use crate::point::Point;

/// A tuple `(A, B, alpha, beta, a, b)` with `AB = BA`, `A alpha = a alpha`,
/// `beta B = b beta`, `beta alpha = 0`.
#[derive(Clone, Debug)]
pub struct CVTuple {
    pub a_mat: Mat,
    pub b_mat: Mat,
    pub alpha: Vec<Coeff>,
    pub beta: Vec<Coeff>,
    pub eig_a: Coeff,
    pub eig_b: Coeff,
}

impl CVTuple {
    pub fn size(&self) -> usize {
        self.a_mat.rows
    }

    /// Checks the four defining identities exactly.
    pub fn verify(&self, field: CoefficientField) -> Result<()> {
        let m = self.size();
        let comm = self
            .a_mat
            .mul(&self.b_mat)?
            .sub(&self.b_mat.mul(&self.a_mat)?)?;
        if !comm.is_zero() {
            return Err(Error::InvalidParameter("AB != BA".into()));
        }
        for i in 0..m {
            let mut lhs = field.zero();
            for j in 0..m {
                lhs = field.add(&lhs, &field.mul(self.a_mat.at(i, j), &self.alpha[j]));
            }
            let rhs = field.mul(&self.eig_a, &self.alpha[i]);
            if lhs != rhs {
                return Err(Error::InvalidParameter("A alpha != a alpha".into()));
            }
        }
        for j in 0..m {
            let mut lhs = field.zero();
            for i in 0..m {
                lhs = field.add(&lhs, &field.mul(&self.beta[i], self.b_mat.at(i, j)));
            }
            let rhs = field.mul(&self.eig_b, &self.beta[j]);
            if lhs != rhs {
                return Err(Error::InvalidParameter("beta B != b beta".into()));
            }
        }
        let mut pairing = field.zero();
        for i in 0..m {
            pairing = field.add(&pairing, &field.mul(&self.beta[i], &self.alpha[i]));
        }
        if !pairing.is_zero() {
            return Err(Error::InvalidParameter("beta alpha != 0".into()));
        }
        Ok(())
    }

    /// Flattens the tuple into a point of the bordered presentation at
    /// `t = 0` with the pairing sum appended.
    pub fn flatten(&self, field: CoefficientField) -> Result<Point> {
        let m = self.size();
        let ideal = jsecond_ideal(m, field)?;
        let vars = &ideal.vars;
        let mut values = vec![field.zero(); vars.len()];
        for i in 1..=m {
            for j in 1..=m {
                values[vars.require(&xname(i, j))?] = self.a_mat.at(i - 1, j - 1).clone();
                values[vars.require(&yname(i, j))?] = self.b_mat.at(i - 1, j - 1).clone();
            }
            values[vars.require(&uname(i))?] = self.alpha[i - 1].clone();
            values[vars.require(&vname(i))?] = self.beta[i - 1].clone();
        }
        values[vars.require("t1")?] = self.eig_a.clone();
        values[vars.require("t2")?] = self.eig_b.clone();
        Point::from_values(vars, field, values)
    }
}

fn random_coeff(rng: &mut ChaCha12Rng, field: CoefficientField, span: u64) -> Coeff {
    match field {
        CoefficientField::Prime(p) => Coeff::Fp(rng.gen_range(0..p)),
        CoefficientField::Rationals => field.from_i64(rng.gen_range(0..span) as i64),
    }
}

/// Draws `k` pairwise-distinct field elements by rejection.
fn distinct_tuple(
    rng: &mut ChaCha12Rng,
    field: CoefficientField,
    k: usize,
    span: u64,
) -> Result<Vec<Coeff>> {
    if let CoefficientField::Prime(p) = field {
        if (k as u64) > p {
            return Err(Error::InvalidParameter(
                "field too small for a pairwise-distinct tuple".into(),
            ));
        }
    }
    let mut out: Vec<Coeff> = Vec::with_capacity(k);
    let mut tries = 0usize;
    while out.len() < k {
        let c = random_coeff(rng, field, span);
        if out.contains(&c) {
            tries += 1;
            if tries > 10_000 {
                return Err(Error::InvalidParameter(
                    "rejection sampling for distinct values exhausted".into(),
                ));
            }
            continue;
        }
        out.push(c);
    }
    Ok(out)
}

/// Applies the parametrization to a seeded pseudorandom
/// `(g, a0..a_{m-m1}, b0..b_{m-m2}, alpha, beta)` with `g` invertible and
/// the two eigenvalue tuples pairwise distinct. The result satisfies the
/// tuple invariants exactly.
pub fn psi_sample(
    m: usize,
    m1: usize,
    m2: usize,
    seed: u64,
    field: CoefficientField,
) -> Result<CVTuple> {
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
        if p <= (4 * m) as u64 {
            return Err(Error::InvalidParameter(format!(
                "prime {p} too small for distinct tuples at m = {m}"
            )));
        }
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let span = (8 * m + 16) as u64;
    let a_tuple = distinct_tuple(&mut rng, field, m - m1 + 1, span)?;
    let b_tuple = distinct_tuple(&mut rng, field, m - m2 + 1, span)?;
    let alpha_free: Vec<Coeff> = (0..m1).map(|_| random_coeff(&mut rng, field, span)).collect();
    let beta_free: Vec<Coeff> = (0..m2).map(|_| random_coeff(&mut rng, field, span)).collect();

    // Invertible conjugator, resampled on singularity (bounded retries).
    let mut g = None;
    for _ in 0..64 {
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            rows.push((0..m).map(|_| random_coeff(&mut rng, field, span)).collect());
        }
        let cand = Mat::from_rows(field, rows)?;
        if !cand.det()?.is_zero() {
            g = Some(cand);
            break;
        }
    }
    let g = g.ok_or_else(|| {
        Error::InvalidParameter("could not sample an invertible conjugator".into())
    })?;
    let g_inv = g.inverse()?;

    // Diagonal models: a0 repeated m1 times then the free a's;
    // the free b's then b0 repeated m2 times.
    let a0 = a_tuple[0].clone();
    let b0 = b_tuple[0].clone();
    let mut a_diag = vec![a0.clone(); m1];
    a_diag.extend(a_tuple[1..].iter().cloned());
    let mut b_diag: Vec<Coeff> = b_tuple[1..].to_vec();
    b_diag.extend(std::iter::repeat(b0.clone()).take(m2));

    let a_mat = g.mul(&Mat::diag(field, &a_diag))?.mul(&g_inv)?;
    let b_mat = g.mul(&Mat::diag(field, &b_diag))?.mul(&g_inv)?;

    // alpha = g (alpha_free, 0)^t ; beta = (0, beta_free) g^{-1}.
    let mut alpha = vec![field.zero(); m];
    for i in 0..m {
        for (k, af) in alpha_free.iter().enumerate() {
            alpha[i] = field.add(&alpha[i], &field.mul(g.at(i, k), af));
        }
    }
    let mut beta = vec![field.zero(); m];
    for j in 0..m {
        for (k, bf) in beta_free.iter().enumerate() {
            beta[j] = field.add(&beta[j], &field.mul(bf, g_inv.at(m - m2 + k, j)));
        }
    }
    Ok(CVTuple {
        a_mat,
        b_mat,
        alpha,
        beta,
        eig_a: a0,
        eig_b: b0,
    })
}

/// Evaluates every generator of the bordered presentation at `samples`
/// seeded samples; exact zero required.
pub fn psi_membership_check(
    m: usize,
    m1: usize,
    m2: usize,
    samples: u64,
    seed: u64,
    field: CoefficientField,
) -> VerificationReport {
    let params = params_from([
        ("m", json!(m)),
        ("m1", json!(m1)),
        ("m2", json!(m2)),
        ("samples", json!(samples)),
        ("seed", json!(seed)),
        ("field", json!(field.to_string())),
    ]);
    run_check(format!("psi/({m},{m1},{m2})"), params, || {
        let ideal = jsecond_ideal(m, field)?;
        for s in 0..samples {
            let sample_seed = seed
                .wrapping_add((s + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
                .wrapping_add(((m * 100 + m1 * 10 + m2) as u64) << 32);
            let tuple = psi_sample(m, m1, m2, sample_seed, field)?;
            let point = tuple.flatten(field)?;
            for (idx, g) in ideal.gens.iter().enumerate() {
                if !g.evaluate(&point)?.is_zero() {
                    return Ok((
                        Status::Fail,
                        format!("sample {s}: generator [{idx}] does not vanish"),
                    ));
                }
            }
        }
        Ok((
            Status::Pass,
            format!("{samples} samples, all generators vanish exactly"),
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    #[test]
    fn smallest_samples_have_expected_shape() {
        // m1 = 1, m2 = 0: the covector is forced to zero.
        let t = psi_sample(1, 1, 0, 7, q()).unwrap();
        assert_eq!(t.size(), 1);
        assert!(t.beta[0].is_zero());
        assert_eq!(*t.a_mat.at(0, 0), t.eig_a);
        t.verify(q()).unwrap();

        // m1 = m2 = 0: both borders vanish and the diagonals are free.
        let t0 = psi_sample(1, 0, 0, 7, q()).unwrap();
        assert!(t0.alpha[0].is_zero());
        assert!(t0.beta[0].is_zero());
        assert_ne!(*t0.a_mat.at(0, 0), t0.eig_a);
        t0.verify(q()).unwrap();
    }

    #[test]
    fn samples_are_deterministic_in_the_seed() {
        let a = psi_sample(3, 1, 2, 42, q()).unwrap();
        let b = psi_sample(3, 1, 2, 42, q()).unwrap();
        assert_eq!(a.a_mat, b.a_mat);
        assert_eq!(a.alpha, b.alpha);
        let c = psi_sample(3, 1, 2, 43, q()).unwrap();
        assert!(a.a_mat != c.a_mat || a.b_mat != c.b_mat);
    }

    #[test]
    fn invariants_hold_over_both_fields() {
        let fp = CoefficientField::prime(32003).unwrap();
        for (m, m1, m2) in [(1, 0, 1), (2, 1, 1), (3, 2, 1), (4, 2, 2)] {
            for seed in 0..5 {
                for field in [q(), fp] {
                    let t = psi_sample(m, m1, m2, seed, field).unwrap();
                    t.verify(field).unwrap();
                }
            }
        }
    }

    #[test]
    fn membership_check_passes() {
        let r = psi_membership_check(2, 1, 1, 25, 0, CoefficientField::prime(32003).unwrap());
        assert_eq!(r.status, Status::Pass, "{}", r.details);
    }

    #[test]
    fn small_field_rejected() {
        let f7 = CoefficientField::prime(7).unwrap();
        assert!(psi_sample(2, 1, 1, 0, f7).is_err());
    }
}

//! One-parameter degeneration families: each check verifies the family's
//! displayed identities symbolically in the parameter `c` over the
//! polynomial ring K[c].

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::lab::report::{params_from, run_check, Status, VerificationReport};
use crate::matrix::{Mat, PolyMat};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::vars::{VariableSet, Vars};

/// Data for one family instance. The variant fixes which identity set is
/// verified.
#[derive(Clone, Debug)]
pub enum FamilyInstance {
    /// Upper block-triangular pair with scalar top-left `a'`-block and a
    /// rank-deficient coupling block; the family perturbs the top-left of
    /// the second matrix by `c * alpha2 * beta2`.
    L54 {
        m: usize,
        r: usize,
        a_scalar: Coeff,
        a: Mat,
        b: Mat,
        alpha: Vec<Coeff>,
        beta: Vec<Coeff>,
        eig_a: Coeff,
        eig_b: Coeff,
    },
    /// Both diagonal `a`-blocks scalar; the family perturbs the bottom-right
    /// of the second matrix, shifting the covector eigenvalue by
    /// `c * (beta1 . alpha')`.
    L55 {
        m: usize,
        r: usize,
        a_scalar: Coeff,
        a: Mat,
        b: Mat,
        alpha: Vec<Coeff>,
        beta: Vec<Coeff>,
        eig_a: Coeff,
        eig_b: Coeff,
    },
    /// The 2x2 joint Jordan deformation `A(c) = A + c E11`,
    /// `B(c) = B + (b2/a2) c E11`.
    L56 {
        a1: Coeff,
        a2: Coeff,
        b1: Coeff,
        b2: Coeff,
        alpha_top: Coeff,
        beta_tail: Coeff,
    },
    /// Diagonal pair with eigenvector data; the family adds the coupling
    /// block `c * alpha_i beta_j / (b - b_i)` so that the commutator equals
    /// `c * alpha * beta` identically.
    L59 {
        m: usize,
        m1: usize,
        m2: usize,
        eig_a: Coeff,
        eig_b: Coeff,
        a_free: Vec<Coeff>,
        b_free: Vec<Coeff>,
        alpha_free: Vec<Coeff>,
        beta_free: Vec<Coeff>,
        /// Optional replacement for the computed coupling table
        /// (m1 x m2); a wrong table must surface as a nonzero residual.
        coupling: Option<Vec<Vec<Coeff>>>,
    },
}

impl FamilyInstance {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilyInstance::L54 { .. } => "L54",
            FamilyInstance::L55 { .. } => "L55",
            FamilyInstance::L56 { .. } => "L56",
            FamilyInstance::L59 { .. } => "L59",
        }
    }

    fn size(&self) -> usize {
        match self {
            FamilyInstance::L54 { m, .. } | FamilyInstance::L55 { m, .. } => *m,
            FamilyInstance::L56 { .. } => 2,
            FamilyInstance::L59 { m, .. } => *m,
        }
    }
}

struct ParamRing {
    vars: Vars,
    field: CoefficientField,
    c: Polynomial,
}

fn param_ring(field: CoefficientField) -> Result<ParamRing> {
    let vars = VariableSet::new(["c"])?;
    let c = Polynomial::var(&vars, field, "c")?;
    Ok(ParamRing { vars, field, c })
}

fn lift_mat(ring: &ParamRing, m: &Mat) -> Result<PolyMat> {
    let mut data = Vec::with_capacity(m.rows * m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            data.push(Polynomial::constant(
                &ring.vars,
                ring.field,
                m.at(i, j).clone(),
            ));
        }
    }
    PolyMat::new(m.rows, m.cols, data)
}

fn lift_col(ring: &ParamRing, v: &[Coeff]) -> Result<PolyMat> {
    let data = v
        .iter()
        .map(|c| Polynomial::constant(&ring.vars, ring.field, c.clone()))
        .collect();
    PolyMat::new(v.len(), 1, data)
}

fn lift_row(ring: &ParamRing, v: &[Coeff]) -> Result<PolyMat> {
    let data = v
        .iter()
        .map(|c| Polynomial::constant(&ring.vars, ring.field, c.clone()))
        .collect();
    PolyMat::new(1, v.len(), data)
}

fn first_nonzero_residual(residuals: &[(&str, PolyMat)]) -> Option<String> {
    for (name, r) in residuals {
        for i in 0..r.rows {
            for j in 0..r.cols {
                let p = r.at(i, j);
                if !p.is_zero() {
                    return Some(format!(
                        "{name}[{i},{j}] = {}",
                        p.render(&MonomialOrder::GrevLex)
                    ));
                }
            }
        }
    }
    None
}

/// Validates that `(a, b, alpha, beta, eig_a, eig_b)` is a commuting
/// bordered tuple with `beta` supported on the tail block past `r`.
fn check_cv_block(
    field: CoefficientField,
    m: usize,
    r: usize,
    a: &Mat,
    b: &Mat,
    alpha: &[Coeff],
    beta: &[Coeff],
    eig_a: &Coeff,
    eig_b: &Coeff,
) -> Result<()> {
    if a.rows != m || a.cols != m || b.rows != m || b.cols != m {
        return Err(Error::HypothesisViolation("matrix shape".into()));
    }
    if alpha.len() != m || beta.len() != m {
        return Err(Error::HypothesisViolation("vector shape".into()));
    }
    if r == 0 || r >= m {
        return Err(Error::HypothesisViolation("0 < r < m required".into()));
    }
    if !a.mul(b)?.sub(&b.mul(a)?)?.is_zero() {
        return Err(Error::HypothesisViolation("AB != BA".into()));
    }
    for i in 0..m {
        let mut lhs = field.zero();
        let mut lhs_b = field.zero();
        for j in 0..m {
            lhs = field.add(&lhs, &field.mul(a.at(i, j), &alpha[j]));
            lhs_b = field.add(&lhs_b, &field.mul(&beta[j], b.at(j, i)));
        }
        if lhs != field.mul(eig_a, &alpha[i]) {
            return Err(Error::HypothesisViolation("A alpha != a alpha".into()));
        }
        if lhs_b != field.mul(eig_b, &beta[i]) {
            return Err(Error::HypothesisViolation("beta B != b beta".into()));
        }
    }
    let mut pairing = field.zero();
    for i in 0..m {
        pairing = field.add(&pairing, &field.mul(&beta[i], &alpha[i]));
    }
    if !pairing.is_zero() {
        return Err(Error::HypothesisViolation("beta alpha != 0".into()));
    }
    if beta[..r].iter().any(|c| !c.is_zero()) {
        return Err(Error::HypothesisViolation(
            "beta must vanish on the leading block".into(),
        ));
    }
    // Lower-left block of both matrices must vanish.
    for i in r..m {
        for j in 0..r {
            if !a.at(i, j).is_zero() || !b.at(i, j).is_zero() {
                return Err(Error::HypothesisViolation(
                    "matrices must be upper block triangular".into(),
                ));
            }
        }
    }
    Ok(())
}

fn block(field: CoefficientField, m: &Mat, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
    let mut out = Mat::zero(field, r1 - r0, c1 - c0);
    for i in r0..r1 {
        for j in c0..c1 {
            *out.at_mut(i - r0, j - c0) = m.at(i, j).clone();
        }
    }
    out
}

/// Verifies the family identities for one instance; the identities must
/// hold identically in the parameter. Hypothesis violations are errors,
/// not failures.
pub fn family_check(instance: &FamilyInstance, field: CoefficientField) -> VerificationReport {
    let params = params_from([
        ("kind", json!(instance.kind())),
        ("m", json!(instance.size())),
        ("field", json!(field.to_string())),
    ]);
    let id = format!("family/{}/m={}", instance.kind(), instance.size());
    run_check(id, params, || family_outcome(instance, field))
}

fn family_outcome(
    instance: &FamilyInstance,
    field: CoefficientField,
) -> Result<(Status, String)> {
    let ring = param_ring(field)?;
    let residuals: Vec<(&str, PolyMat)> = match instance {
        FamilyInstance::L54 {
            m,
            r,
            a_scalar,
            a,
            b,
            alpha,
            beta,
            eig_a,
            eig_b,
        } => {
            let (m, r) = (*m, *r);
            check_cv_block(field, m, r, a, b, alpha, beta, eig_a, eig_b)?;
            for i in 0..r {
                for j in 0..r {
                    let expect = if i == j { a_scalar.clone() } else { field.zero() };
                    if *a.at(i, j) != expect {
                        return Err(Error::HypothesisViolation(
                            "leading block of A must be scalar".into(),
                        ));
                    }
                }
            }
            let a2 = block(field, a, 0, r, r, m);
            if a2.rank() >= r {
                return Err(Error::HypothesisViolation("rank(A2) < r required".into()));
            }
            // Left kernel vector of A2, and a pairing partner.
            let kernel = a2.transpose().kernel_basis();
            let beta2 = kernel
                .first()
                .ok_or_else(|| Error::HypothesisViolation("empty left kernel".into()))?;
            let k = beta2
                .iter()
                .position(|c| !c.is_zero())
                .expect("kernel vector is nonzero");
            // alpha2 = e_k gives beta2 . alpha2 = beta2[k] != 0.
            let mut family = lift_mat(&ring, b)?;
            for i in 0..r {
                for j in 0..r {
                    if i == k {
                        let inc = Polynomial::constant(&ring.vars, field, beta2[j].clone())
                            .mul(&ring.c)?;
                        *family.at_mut(i, j) = family.at(i, j).add(&inc)?;
                    }
                }
            }
            let a_l = lift_mat(&ring, a)?;
            let beta_l = lift_row(&ring, beta)?;
            let commute = a_l.mul(&family)?.sub(&family.mul(&a_l)?)?;
            let eigen = beta_l
                .mul(&family)?
                .sub(&beta_l.scale(&Polynomial::constant(&ring.vars, field, eig_b.clone()))?)?;
            vec![("A*B(c)-B(c)*A", commute), ("beta*B(c)-b*beta", eigen)]
        }
        FamilyInstance::L55 {
            m,
            r,
            a_scalar,
            a,
            b,
            alpha,
            beta,
            eig_a,
            eig_b,
        } => {
            let (m, r) = (*m, *r);
            check_cv_block(field, m, r, a, b, alpha, beta, eig_a, eig_b)?;
            for i in 0..m {
                for j in 0..m {
                    let in_diag_blocks = (i < r && j < r) || (i >= r && j >= r);
                    if in_diag_blocks {
                        let expect = if i == j { a_scalar.clone() } else { field.zero() };
                        if *a.at(i, j) != expect {
                            return Err(Error::HypothesisViolation(
                                "diagonal blocks of A must be the same scalar".into(),
                            ));
                        }
                    }
                }
            }
            let a2 = block(field, a, 0, r, r, m);
            if a2.rank() >= m - r {
                return Err(Error::HypothesisViolation(
                    "rank(A2) < m - r required".into(),
                ));
            }
            let kernel = a2.kernel_basis();
            let alpha_p = kernel
                .first()
                .ok_or_else(|| Error::HypothesisViolation("empty kernel".into()))?;
            let beta1 = &beta[r..];
            let mut pairing = field.zero();
            for i in 0..m - r {
                pairing = field.add(&pairing, &field.mul(&beta1[i], &alpha_p[i]));
            }
            // B4' = alpha' gamma with gamma alpha' = 1 when the pairing
            // vanishes, alpha' beta1 otherwise.
            let b4p = if pairing.is_zero() {
                let k = alpha_p.iter().position(|c| !c.is_zero()).expect("nonzero");
                let inv = field.inv(&alpha_p[k])?;
                let mut g = vec![field.zero(); m - r];
                g[k] = inv;
                outer(field, alpha_p, &g)
            } else {
                outer(field, alpha_p, beta1)
            };
            let mut family = lift_mat(&ring, b)?;
            for i in 0..m - r {
                for j in 0..m - r {
                    if b4p.at(i, j).is_zero() {
                        continue;
                    }
                    let inc = Polynomial::constant(&ring.vars, field, b4p.at(i, j).clone())
                        .mul(&ring.c)?;
                    *family.at_mut(r + i, r + j) = family.at(r + i, r + j).add(&inc)?;
                }
            }
            let a_l = lift_mat(&ring, a)?;
            let beta_l = lift_row(&ring, beta)?;
            let commute = a_l.mul(&family)?.sub(&family.mul(&a_l)?)?;
            // Shifted eigenvalue b + c * pairing.
            let shifted = Polynomial::constant(&ring.vars, field, eig_b.clone()).add(
                &Polynomial::constant(&ring.vars, field, pairing.clone()).mul(&ring.c)?,
            )?;
            let eigen = beta_l.mul(&family)?.sub(&beta_l.scale(&shifted)?)?;
            vec![
                ("A*B(c)-B(c)*A", commute),
                ("beta*B(c)-(b+c*pair)*beta", eigen),
            ]
        }
        FamilyInstance::L56 {
            a1,
            a2,
            b1,
            b2,
            alpha_top,
            beta_tail,
        } => {
            if a2.is_zero() {
                return Err(Error::HypothesisViolation(
                    "the slope b2/a2 needs a2 != 0".into(),
                ));
            }
            let slope = field.div(b2, a2)?;
            let cst = |v: &Coeff| Polynomial::constant(&ring.vars, field, v.clone());
            let zero = Polynomial::zero(&ring.vars, field);
            let a_fam = PolyMat::new(
                2,
                2,
                vec![
                    cst(a1).add(&ring.c)?,
                    cst(a2),
                    zero.clone(),
                    cst(a1),
                ],
            )?;
            let b_fam = PolyMat::new(
                2,
                2,
                vec![
                    cst(b1).add(&cst(&slope).mul(&ring.c)?)?,
                    cst(b2),
                    zero.clone(),
                    cst(b1),
                ],
            )?;
            let alpha_l = PolyMat::new(2, 1, vec![cst(alpha_top), zero.clone()])?;
            let beta_l = PolyMat::new(1, 2, vec![zero, cst(beta_tail)])?;
            let commute = a_fam.mul(&b_fam)?.sub(&b_fam.mul(&a_fam)?)?;
            let eigen_b = beta_l.mul(&b_fam)?.sub(&beta_l.scale(&cst(b1))?)?;
            let shifted_a = cst(a1).add(&ring.c)?;
            let eigen_a = a_fam.mul(&alpha_l)?.sub(&alpha_l.scale(&shifted_a)?)?;
            vec![
                ("A(c)*B(c)-B(c)*A(c)", commute),
                ("beta*B(c)-b*beta", eigen_b),
                ("A(c)*alpha-(a+c)*alpha", eigen_a),
            ]
        }
        FamilyInstance::L59 {
            m,
            m1,
            m2,
            eig_a,
            eig_b,
            a_free,
            b_free,
            alpha_free,
            beta_free,
            coupling,
        } => {
            let (m, m1, m2) = (*m, *m1, *m2);
            if m1 + m2 > m {
                return Err(Error::HypothesisViolation("m1 + m2 <= m required".into()));
            }
            if a_free.len() != m - m1 || b_free.len() != m - m2 {
                return Err(Error::HypothesisViolation("eigenvalue tuple shape".into()));
            }
            if alpha_free.len() != m1 || beta_free.len() != m2 {
                return Err(Error::HypothesisViolation("border vector shape".into()));
            }
            // Coupling denominators b - b_i for the leading rows.
            for i in 0..m1 {
                if field.sub(eig_b, &b_free[i]).is_zero() {
                    return Err(Error::HypothesisViolation(format!(
                        "b - b_{} vanishes",
                        i + 1
                    )));
                }
            }
            let mut a_diag = vec![eig_a.clone(); m1];
            a_diag.extend(a_free.iter().cloned());
            let mut b_diag = b_free.clone();
            b_diag.extend(std::iter::repeat(eig_b.clone()).take(m2));
            let a = Mat::diag(field, &a_diag);
            let b = Mat::diag(field, &b_diag);
            let mut alpha = vec![field.zero(); m];
            alpha[..m1].clone_from_slice(alpha_free);
            let mut beta = vec![field.zero(); m];
            beta[m - m2..].clone_from_slice(beta_free);

            let table: Vec<Vec<Coeff>> = match coupling {
                Some(t) => t.clone(),
                None => {
                    let mut t = Vec::with_capacity(m1);
                    for i in 0..m1 {
                        let denom_inv = field.inv(&field.sub(eig_b, &b_free[i]))?;
                        let mut row = Vec::with_capacity(m2);
                        for j in 0..m2 {
                            row.push(field.mul(
                                &field.mul(&alpha_free[i], &beta_free[j]),
                                &denom_inv,
                            ));
                        }
                        t.push(row);
                    }
                    t
                }
            };
            if table.len() != m1 || table.iter().any(|row| row.len() != m2) {
                return Err(Error::HypothesisViolation("coupling table shape".into()));
            }

            let mut a_fam = lift_mat(&ring, &a)?;
            for i in 0..m1 {
                for j in 0..m2 {
                    let inc =
                        Polynomial::constant(&ring.vars, field, table[i][j].clone()).mul(&ring.c)?;
                    let col = m - m2 + j;
                    *a_fam.at_mut(i, col) = a_fam.at(i, col).add(&inc)?;
                }
            }
            let b_l = lift_mat(&ring, &b)?;
            let alpha_l = lift_col(&ring, &alpha)?;
            let beta_l = lift_row(&ring, &beta)?;
            let rank_one = alpha_l.mul(&beta_l)?.scale(&ring.c)?;
            let commute = a_fam.mul(&b_l)?.sub(&b_l.mul(&a_fam)?)?.sub(&rank_one)?;
            let eigen_a = a_fam.mul(&alpha_l)?.sub(
                &alpha_l.scale(&Polynomial::constant(&ring.vars, field, eig_a.clone()))?,
            )?;
            let eigen_b = beta_l.mul(&b_l)?.sub(
                &beta_l.scale(&Polynomial::constant(&ring.vars, field, eig_b.clone()))?,
            )?;
            let pairing = beta_l.mul(&alpha_l)?;
            vec![
                ("A(c)*B-B*A(c)-c*alpha*beta", commute),
                ("A(c)*alpha-a*alpha", eigen_a),
                ("beta*B-b*beta", eigen_b),
                ("beta*alpha", pairing),
            ]
        }
    };
    match first_nonzero_residual(&residuals) {
        None => Ok((
            Status::Pass,
            format!(
                "all {} family identities hold identically in c",
                residuals.len()
            ),
        )),
        Some(witness) => Ok((Status::Fail, format!("nonzero residual: {witness}"))),
    }
}

fn outer(field: CoefficientField, col: &[Coeff], row: &[Coeff]) -> Mat {
    let mut out = Mat::zero(field, col.len(), row.len());
    for i in 0..col.len() {
        for j in 0..row.len() {
            *out.at_mut(i, j) = field.mul(&col[i], &row[j]);
        }
    }
    out
}

/// Canonical instance for the rank-deficient coupling family:
/// `A = I + E_{1,m}` (plain identity at m = 2), `B = A + 2I`.
pub fn l54_canonical(m: usize, field: CoefficientField) -> Result<FamilyInstance> {
    if m < 2 {
        return Err(Error::InvalidParameter("m >= 2 required".into()));
    }
    let r = m - 1;
    let mut a = Mat::identity(field, m);
    if m >= 3 {
        *a.at_mut(0, m - 1) = field.one();
    }
    let mut b = a.clone();
    for i in 0..m {
        *b.at_mut(i, i) = field.from_i64(3);
    }
    let mut alpha = vec![field.zero(); m];
    alpha[0] = field.one();
    let mut beta = vec![field.zero(); m];
    beta[m - 1] = field.one();
    Ok(FamilyInstance::L54 {
        m,
        r,
        a_scalar: field.one(),
        a,
        b,
        alpha,
        beta,
        eig_a: field.one(),
        eig_b: field.from_i64(3),
    })
}

/// Canonical instance for the scalar-block family: `A = 2I + E_{1,2}`
/// (plain `2I` at m = 2), `B = A + 3I`.
pub fn l55_canonical(m: usize, field: CoefficientField) -> Result<FamilyInstance> {
    if m < 2 {
        return Err(Error::InvalidParameter("m >= 2 required".into()));
    }
    let r = 1;
    let mut a = Mat::identity(field, m).scale(&field.from_i64(2));
    if m >= 3 {
        *a.at_mut(0, 1) = field.one();
    }
    let mut b = a.clone();
    for i in 0..m {
        *b.at_mut(i, i) = field.from_i64(5);
    }
    let mut alpha = vec![field.zero(); m];
    alpha[0] = field.one();
    let mut beta = vec![field.zero(); m];
    beta[m - 1] = field.one();
    Ok(FamilyInstance::L55 {
        m,
        r,
        a_scalar: field.from_i64(2),
        a,
        b,
        alpha,
        beta,
        eig_a: field.from_i64(2),
        eig_b: field.from_i64(5),
    })
}

pub fn l56_canonical(field: CoefficientField) -> FamilyInstance {
    FamilyInstance::L56 {
        a1: field.one(),
        a2: field.one(),
        b1: field.from_i64(2),
        b2: field.from_i64(3),
        alpha_top: field.one(),
        beta_tail: field.one(),
    }
}

/// Canonical diagonal instance with fully distinct eigenvalue data.
pub fn l59_canonical(
    m: usize,
    m1: usize,
    m2: usize,
    field: CoefficientField,
) -> Result<FamilyInstance> {
    if m1 + m2 > m || m1 == 0 || m2 == 0 {
        return Err(Error::InvalidParameter(
            "need m1, m2 >= 1 and m1 + m2 <= m".into(),
        ));
    }
    let a_free: Vec<Coeff> = (1..=m - m1).map(|i| field.from_i64(i as i64)).collect();
    let b_free: Vec<Coeff> = (1..=m - m2)
        .map(|j| field.from_i64((m + j) as i64))
        .collect();
    Ok(FamilyInstance::L59 {
        m,
        m1,
        m2,
        eig_a: field.zero(),
        eig_b: field.from_i64((2 * m + 5) as i64),
        a_free,
        b_free,
        alpha_free: vec![field.one(); m1],
        beta_free: vec![field.one(); m2],
        coupling: None,
    })
}

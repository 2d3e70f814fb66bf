//! The joint-centralizer regularity criterion for commuting pairs: a pair
//! is a regular point exactly when its joint centralizer has dimension n.

use crate::error::{Error, Result};
use crate::matrix::Mat;

/// Solves `{C : AC = CA, CB = BC}` by exact elimination over the n^2
/// unknown entries and returns `(centralizer dimension, regular)` where
/// regular means the dimension equals n.
pub fn regular_point_test(a: &Mat, b: &Mat) -> Result<(usize, bool)> {
    let n = a.rows;
    if a.cols != n || b.rows != n || b.cols != n {
        return Err(Error::InvalidParameter("square matrices required".into()));
    }
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    let field = a.field();
    if !a.mul(b)?.sub(&b.mul(a)?)?.is_zero() {
        return Err(Error::InvalidParameter(
            "matrices do not commute exactly".into(),
        ));
    }
    // Unknowns C_{kl} indexed k*n + l; equations AC - CA = 0 and
    // CB - BC = 0, entry by entry.
    let mut rows = Vec::with_capacity(2 * n * n);
    for (m, sign_left) in [(a, true), (b, false)] {
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![field.zero(); n * n];
                for k in 0..n {
                    for l in 0..n {
                        // coefficient of C_{kl} in (MC - CM)_{ij}
                        let mut coeff = field.zero();
                        if l == j {
                            coeff = field.add(&coeff, m.at(i, k));
                        }
                        if k == i {
                            coeff = field.sub(&coeff, m.at(l, j));
                        }
                        if !sign_left {
                            coeff = field.neg(&coeff);
                        }
                        row[k * n + l] = coeff;
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Mat::from_rows(field, rows)?;
    let dim = n * n - system.rank();
    Ok((dim, dim == n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    #[test]
    fn distinct_diagonals_are_regular() {
        let a = Mat::diag(q(), &[q().from_i64(1), q().from_i64(2)]);
        let b = Mat::diag(q(), &[q().from_i64(3), q().from_i64(4)]);
        assert_eq!(regular_point_test(&a, &b).unwrap(), (2, true));
    }

    #[test]
    fn zero_pair_is_not_regular() {
        let z = Mat::zero(q(), 2, 2);
        assert_eq!(regular_point_test(&z, &z).unwrap(), (4, false));
    }

    #[test]
    fn nilpotent_jordan_block_with_zero_is_regular() {
        for n in 2..=4usize {
            let mut j = Mat::zero(q(), n, n);
            for i in 0..n - 1 {
                *j.at_mut(i, i + 1) = q().one();
            }
            let z = Mat::zero(q(), n, n);
            assert_eq!(regular_point_test(&j, &z).unwrap(), (n, true));
        }
    }

    #[test]
    fn symmetric_in_the_two_arguments() {
        let a = Mat::diag(q(), &[q().from_i64(1), q().from_i64(1), q().from_i64(5)]);
        let mut b = Mat::zero(q(), 3, 3);
        *b.at_mut(0, 1) = q().one();
        // b commutes with a (block structure).
        assert_eq!(
            regular_point_test(&a, &b).unwrap(),
            regular_point_test(&b, &a).unwrap()
        );
    }

    #[test]
    fn non_commuting_input_rejected() {
        let mut a = Mat::zero(q(), 2, 2);
        *a.at_mut(0, 1) = q().one();
        let mut b = Mat::zero(q(), 2, 2);
        *b.at_mut(1, 0) = q().one();
        assert!(regular_point_test(&a, &b).is_err());
    }
}

//! Exact dense matrices over a coefficient field, and matrices of
//! polynomials for symbolic block computations.

use crate::error::{Error, Result};
use crate::field::{Coeff, CoefficientField};
use crate::poly::Polynomial;
use crate::vars::{same_vars, Vars};

/// A dense matrix of field elements.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    field: CoefficientField,
    data: Vec<Coeff>,
}

impl Mat {
    pub fn zero(field: CoefficientField, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            field,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: CoefficientField, n: usize) -> Self {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = field.one();
        }
        m
    }

    pub fn from_rows(field: CoefficientField, rows: Vec<Vec<Coeff>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::InvalidParameter("ragged matrix rows".into()));
            }
            for v in row {
                if !field.owns(&v) {
                    return Err(Error::FieldMismatch);
                }
                data.push(v);
            }
        }
        Ok(Mat {
            rows: r,
            cols: c,
            field,
            data,
        })
    }

    pub fn diag(field: CoefficientField, entries: &[Coeff]) -> Self {
        let n = entries.len();
        let mut m = Mat::zero(field, n, n);
        for (i, e) in entries.iter().enumerate() {
            *m.at_mut(i, i) = e.clone();
        }
        m
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn at(&self, i: usize, j: usize) -> &Coeff {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Coeff {
        &mut self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::InvalidParameter("matrix shape mismatch".into()));
        }
        let f = &self.field;
        let mut out = Mat::zero(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = f.mul(a, other.at(k, j));
                    *out.at_mut(i, j) = f.add(out.at(i, j), &t);
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidParameter("matrix shape mismatch".into()));
        }
        let f = &self.field;
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = f.sub(a, b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> Mat {
        let f = &self.field;
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = f.mul(a, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        out
    }

    /// Row echelon form in place; returns the rank. Exact Gaussian
    /// elimination with first-nonzero pivoting (deterministic).
    fn echelon(&mut self) -> usize {
        let f = self.field;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if pivot != rank {
                for j in 0..self.cols {
                    self.data.swap(pivot * self.cols + j, rank * self.cols + j);
                }
            }
            let inv = f.inv(self.at(rank, col)).expect("nonzero pivot");
            for j in col..self.cols {
                let v = f.mul(self.at(rank, j), &inv);
                *self.at_mut(rank, j) = v;
            }
            for r in 0..self.rows {
                if r != rank && !self.at(r, col).is_zero() {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        let t = f.mul(&factor, self.at(rank, j));
                        *self.at_mut(r, j) = f.sub(self.at(r, j), &t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon()
    }

    pub fn det(&self) -> Result<Coeff> {
        if self.rows != self.cols {
            return Err(Error::InvalidParameter("determinant of non-square".into()));
        }
        let f = self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return Ok(f.zero());
            };
            if pivot != col {
                for j in 0..n {
                    m.data.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(&det);
            }
            let p = m.at(col, col).clone();
            det = f.mul(&det, &p);
            let inv = f.inv(&p)?;
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = f.mul(m.at(r, col), &inv);
                for j in col..n {
                    let t = f.mul(&factor, m.at(col, j));
                    *m.at_mut(r, j) = f.sub(m.at(r, j), &t);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<Mat> {
        if self.rows != self.cols {
            return Err(Error::InvalidParameter("inverse of non-square".into()));
        }
        let f = self.field;
        let n = self.rows;
        // Augment with the identity and eliminate.
        let mut aug = Mat::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = f.one();
        }
        let rank = aug.echelon();
        if rank < n {
            return Err(Error::DivisionByZero);
        }
        let mut out = Mat::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                *out.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Ok(out)
    }

    /// A basis of the right kernel (null space), as columns.
    pub fn kernel_basis(&self) -> Vec<Vec<Coeff>> {
        let f = self.field;
        let mut m = self.clone();
        m.echelon();
        // Identify pivot columns.
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; self.cols];
        let mut row = 0;
        for col in 0..self.cols {
            if row < m.rows && !m.at(row, col).is_zero() {
                pivot_of_col[col] = Some(row);
                row += 1;
            }
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for col in 0..self.cols {
                if let Some(r) = pivot_of_col[col] {
                    v[col] = f.neg(m.at(r, free));
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// A dense matrix of polynomials sharing one variable set and field.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Polynomial>,
}

impl PolyMat {
    pub fn new(rows: usize, cols: usize, data: Vec<Polynomial>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::InvalidParameter("matrix data length".into()));
        }
        if let Some(first) = data.first() {
            for p in &data {
                if p.field() != first.field() {
                    return Err(Error::FieldMismatch);
                }
                if !same_vars(p.vars(), first.vars()) {
                    return Err(Error::VarSetMismatch);
                }
            }
        }
        Ok(PolyMat { rows, cols, data })
    }

    pub fn zero(vars: &Vars, field: CoefficientField, rows: usize, cols: usize) -> Self {
        PolyMat {
            rows,
            cols,
            data: vec![Polynomial::zero(vars, field); rows * cols],
        }
    }

    pub fn scalar(vars: &Vars, field: CoefficientField, n: usize, p: &Polynomial) -> Self {
        let mut m = PolyMat::zero(vars, field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = p.clone();
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.data
    }

    pub fn mul(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.rows {
            return Err(Error::InvalidParameter("matrix shape mismatch".into()));
        }
        let proto = &self.data[0];
        let mut out = PolyMat::zero(proto.vars(), proto.field(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.mul(other.at(k, j))?;
                    *out.at_mut(i, j) = out.at(i, j).add(&t)?;
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidParameter("matrix shape mismatch".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.sub(b)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::InvalidParameter("matrix shape mismatch".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a = a.add(b)?;
        }
        Ok(out)
    }

    pub fn scale(&self, p: &Polynomial) -> Result<PolyMat> {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = a.mul(p)?;
        }
        Ok(out)
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &PolyMat) -> Result<PolyMat> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    /// Determinant by Laplace expansion (intended for small blocks).
    pub fn det(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::InvalidParameter("determinant of non-square".into()));
        }
        let proto = &self.data[0];
        let n = self.rows;
        if n == 0 {
            return Err(Error::InvalidParameter("empty determinant".into()));
        }
        if n == 1 {
            return Ok(self.at(0, 0).clone());
        }
        let mut acc = Polynomial::zero(proto.vars(), proto.field());
        for j in 0..n {
            if self.at(0, j).is_zero() {
                continue;
            }
            let minor = self.minor(0, j)?;
            let mut t = self.at(0, j).mul(&minor.det()?)?;
            if j % 2 == 1 {
                t = t.neg();
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    fn minor(&self, row: usize, col: usize) -> Result<PolyMat> {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                data.push(self.at(i, j).clone());
            }
        }
        PolyMat::new(self.rows - 1, self.cols - 1, data)
    }

    /// Adjugate matrix: `adj(M) * M = det(M) * I`.
    pub fn adjugate(&self) -> Result<PolyMat> {
        if self.rows != self.cols {
            return Err(Error::InvalidParameter("adjugate of non-square".into()));
        }
        let n = self.rows;
        let proto = &self.data[0];
        if n == 1 {
            let one = Polynomial::from_i64(proto.vars(), proto.field(), 1);
            return PolyMat::new(1, 1, vec![one]);
        }
        let mut out = PolyMat::zero(proto.vars(), proto.field(), n, n);
        for i in 0..n {
            for j in 0..n {
                let mut c = self.minor(j, i)?.det()?;
                if (i + j) % 2 == 1 {
                    c = c.neg();
                }
                *out.at_mut(i, j) = c;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::VariableSet;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    #[test]
    fn rank_and_kernel() {
        let f = q();
        let m = Mat::from_rows(
            f,
            vec![
                vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)],
                vec![f.from_i64(2), f.from_i64(4), f.from_i64(6)],
                vec![f.from_i64(0), f.from_i64(1), f.from_i64(1)],
            ],
        )
        .unwrap();
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        // Kernel vectors are annihilated.
        let v = &ker[0];
        for i in 0..3 {
            let mut s = f.zero();
            for j in 0..3 {
                s = f.add(&s, &f.mul(m.at(i, j), &v[j]));
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = CoefficientField::prime(101).unwrap();
        let m = Mat::from_rows(
            f,
            vec![
                vec![f.from_i64(3), f.from_i64(1)],
                vec![f.from_i64(5), f.from_i64(2)],
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Mat::identity(f, 2));
        assert_eq!(m.det().unwrap(), f.from_i64(1));
    }

    #[test]
    fn poly_adjugate_identity() {
        let v = VariableSet::new(["a", "b", "c", "d"]).unwrap();
        let f = q();
        let entries: Vec<Polynomial> = ["a", "b", "c", "d"]
            .iter()
            .map(|n| Polynomial::var(&v, f, n).unwrap())
            .collect();
        let m = PolyMat::new(2, 2, entries).unwrap();
        let adj = m.adjugate().unwrap();
        let det = m.det().unwrap();
        let prod = adj.mul(&m).unwrap();
        let expect = PolyMat::scalar(&v, f, 2, &det);
        assert_eq!(prod, expect);
    }
}

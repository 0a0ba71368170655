use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix over GF(p). Acts on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix over GF({}) {}x{}", self.field.p(), self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from integer rows, reducing mod p. All rows must have length `cols`.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = Matrix::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, field.reduce(v));
            }
        }
        Ok(m)
    }

    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix { field, rows, cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.p(), right: other.field.p() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let f = self.field;
        let p = f.p() as u64;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k) as u64;
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, c) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        let p = self.field.p() as u64;
        Ok((0..self.rows)
            .map(|r| {
                let s = self.row(r).iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as u32
            })
            .collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Matrix { field: f, rows: self.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch { expected: self.rows, found: self.cols });
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub(crate) fn row_reduce(&mut self) -> Vec<usize> {
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(sel) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if sel != r {
                for k in 0..self.cols {
                    self.data.swap(sel * self.cols + k, r * self.cols + k);
                }
            }
            let inv = f.inv(self.get(r, c));
            for k in c..self.cols {
                let v = f.mul(self.get(r, k), inv);
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for k in c..self.cols {
                    let v = f.sub(self.get(i, k), f.mul(factor, self.get(r, k)));
                    self.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// RREF with zero rows kept at the bottom, plus pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{u : M u = 0}`.
    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let f = self.field;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut u = vec![0u32; self.cols];
            u[free] = 1;
            for (t, &pc) in pivots.iter().enumerate() {
                u[pc] = f.neg(r.get(t, free));
            }
            basis.push(u);
        }
        Subspace::from_rows(f, self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_rows(self.field, self.rows, self.transpose().to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn jordan_block(f: PrimeField, n: usize) -> Matrix {
        let mut m = Matrix::zeros(f, n, n);
        for j in 1..n {
            m.set(j - 1, j, 1);
        }
        m
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let k = Matrix::zeros(gf(2), 2, 2).kernel();
        assert_eq!(k.dim(), 2);
    }

    #[test]
    fn identity_rank() {
        for n in 0..6 {
            assert_eq!(Matrix::identity(gf(3), n).rank(), n);
        }
    }

    #[test]
    fn jordan_string_kernel_is_a_line() {
        for n in 1..6 {
            let k = jordan_block(gf(5), n).kernel();
            assert_eq!(k.dim(), 1);
            let mut e1 = vec![0; n];
            e1[0] = 1;
            assert!(k.contains(&e1).unwrap());
        }
    }

    #[test]
    fn rank_nullity() {
        let f = gf(7);
        let m = Matrix::from_rows(f, 4, &[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 0, -1]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel().dim(), 2);
        assert_eq!(m.image().dim(), 2);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Matrix::identity(gf(2), 2);
        let b = Matrix::identity(gf(3), 2);
        assert!(matches!(a.mul(&b), Err(Error::FieldMismatch { .. })));
    }
}

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A subspace of GF(p)^n, stored as its RREF basis. Equal subspaces have
/// identical representations, so `Eq`/`Hash` are span equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceWire {
    p: u32,
    n: usize,
    pivots: Vec<usize>,
    entries: Vec<u32>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceWire {
            p: self.field().p(),
            n: self.ambient,
            pivots: self.pivots.clone(),
            entries: self.basis.to_rows().concat(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = SubspaceWire::deserialize(d)?;
        let f = PrimeField::new(w.p).map_err(D::Error::custom)?;
        let k = w.pivots.len();
        if w.entries.len() != k.saturating_mul(w.n) || w.entries.iter().any(|&e| e >= w.p) {
            return Err(D::Error::custom("entry list does not match pivots"));
        }
        let rows: Vec<Vec<u32>> = w.entries.chunks(w.n.max(1)).take(k).map(|c| c.to_vec()).collect();
        let s = Subspace::from_rows(f, w.n, rows);
        if s.pivots != w.pivots || s.basis.to_rows().concat() != w.entries {
            return Err(D::Error::custom("subspace is not in canonical form"));
        }
        Ok(s)
    }
}

/// Linear map `V -> V/W` in coordinates, with a section back into `V`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// `(n - dim W) x n`, kernel exactly `W`.
    pub matrix: Matrix,
    /// Non-pivot columns of `W`; the section sends `e_k` to `e_{free[k]}`.
    pub free: Vec<usize>,
}

impl QuotientMap {
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        self.matrix.mul_vec(v)
    }

    pub fn lift(&self, u: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.matrix.cols()];
        for (k, &c) in self.free.iter().enumerate() {
            out[c] = u[k];
        }
        out
    }

    /// Section as an `n x (n - dim W)` matrix.
    pub fn section(&self) -> Matrix {
        let f = self.matrix.field();
        let mut s = Matrix::zeros(f, self.matrix.cols(), self.free.len());
        for (k, &c) in self.free.iter().enumerate() {
            s.set(c, k, 1);
        }
        s
    }

    /// Map induced on the quotient by `x`; valid when `x` preserves the kernel.
    pub fn induced(&self, x: &Matrix) -> Result<Matrix> {
        self.matrix.mul(x)?.mul(&self.section())
    }
}

impl Subspace {
    /// Span of `rows` (any spanning set, each of length `n`).
    pub fn from_rows(field: PrimeField, n: usize, rows: Vec<Vec<u32>>) -> Subspace {
        let k = rows.len();
        let mut data = Vec::with_capacity(k * n);
        for r in &rows {
            assert_eq!(r.len(), n, "vector length must equal ambient dimension");
            data.extend_from_slice(r);
        }
        let mut m = Matrix::from_raw(field, k, n, data);
        let pivots = m.row_reduce();
        let d = pivots.len();
        let basis = Matrix::from_raw(field, d, n, m.to_rows().into_iter().take(d).flatten().collect());
        Subspace { ambient: n, basis, pivots }
    }

    /// Checked version of [`Subspace::from_rows`].
    pub fn span(field: PrimeField, n: usize, rows: &[Vec<u32>]) -> Result<Subspace> {
        for r in rows {
            if r.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: r.len() });
            }
        }
        let p = field.p();
        Ok(Subspace::from_rows(field, n, rows.iter().map(|r| r.iter().map(|&v| v % p).collect()).collect()))
    }

    /// Trusted constructor for a basis already in RREF.
    pub(crate) fn from_rref(basis: Matrix, pivots: Vec<usize>) -> Subspace {
        Subspace { ambient: basis.cols(), basis, pivots }
    }

    pub fn zero(field: PrimeField, n: usize) -> Subspace {
        Subspace { ambient: n, basis: Matrix::zeros(field, 0, n), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, n: usize) -> Subspace {
        Subspace { ambient: n, basis: Matrix::identity(field, n), pivots: (0..n).collect() }
    }

    /// Span of the standard basis vectors `e_i`, `i` in `indices`.
    pub fn coordinate(field: PrimeField, n: usize, indices: &[usize]) -> Subspace {
        let rows = indices
            .iter()
            .map(|&i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect();
        Subspace::from_rows(field, n, rows)
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u32>> {
        self.basis.to_rows()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ambient
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch { left: self.field().p(), right: other.field().p() });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// `u` minus its component along the basis, in the pivot coordinates.
    pub fn reduce(&self, u: &[u32]) -> Result<Vec<u32>> {
        if u.len() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: u.len() });
        }
        let f = self.field();
        let mut out = u.to_vec();
        for (t, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(t)) {
                *o = f.sub(*o, f.mul(c, b));
            }
        }
        Ok(out)
    }

    pub fn contains(&self, u: &[u32]) -> Result<bool> {
        Ok(self.reduce(u)?.iter().all(|&v| v == 0))
    }

    /// Coefficients of `u` in the RREF basis; only meaningful when `u` lies in the subspace.
    pub fn coordinates_of(&self, u: &[u32]) -> Vec<u32> {
        self.pivots.iter().map(|&pc| u[pc]).collect()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        for r in 0..self.dim() {
            if !other.contains(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let mut rows = self.basis_rows();
        rows.extend(other.basis_rows());
        Ok(Subspace::from_rows(self.field(), self.ambient, rows))
    }

    /// Adds a single vector to the span.
    pub fn with_vector(&self, u: &[u32]) -> Result<Subspace> {
        if self.contains(u)? {
            return Ok(self.clone());
        }
        let mut rows = self.basis_rows();
        rows.push(u.to_vec());
        Ok(Subspace::from_rows(self.field(), self.ambient, rows))
    }

    /// `{a : a . s = 0 for all s}` in the dual coordinates.
    pub fn annihilator(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient);
        }
        self.basis.kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }

    /// `x(S)`.
    pub fn image_under(&self, x: &Matrix) -> Result<Subspace> {
        if x.cols() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: x.cols() });
        }
        let rows = (0..self.dim()).map(|r| x.mul_vec(self.basis.row(r))).collect::<Result<Vec<_>>>()?;
        Ok(Subspace::from_rows(self.field(), x.rows(), rows))
    }

    /// `{u : x u in S}`.
    pub fn preimage_under(&self, x: &Matrix) -> Result<Subspace> {
        if x.rows() != self.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: x.rows() });
        }
        let ann = self.annihilator();
        if ann.dim() == 0 {
            return Ok(Subspace::full(self.field(), x.cols()));
        }
        Ok(ann.basis.mul(x)?.kernel())
    }

    pub fn is_stable_under(&self, x: &Matrix) -> Result<bool> {
        self.image_under(x)?.is_subspace_of(self)
    }

    pub fn quotient_map(&self) -> QuotientMap {
        let f = self.field();
        let n = self.ambient;
        let mut is_pivot = vec![false; n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut q = Matrix::zeros(f, free.len(), n);
        for (k, &fc) in free.iter().enumerate() {
            q.set(k, fc, 1);
            for (t, &pc) in self.pivots.iter().enumerate() {
                q.set(k, pc, f.neg(self.basis.get(t, fc)));
            }
        }
        QuotientMap { matrix: q, free }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn intersect_with_self() {
        let f = gf(3);
        let s = Subspace::from_rows(f, 4, vec![vec![1, 2, 0, 1], vec![0, 1, 1, 1]]);
        assert_eq!(s.intersect(&s).unwrap(), s);
    }

    #[test]
    fn quotient_by_zero_is_invertible() {
        let f = gf(5);
        let q = Subspace::zero(f, 3).quotient_map();
        assert_eq!(q.matrix.rank(), 3);
        assert_eq!(q.matrix.rows(), 3);
    }

    #[test]
    fn axes_sum_to_plane() {
        let f = gf(2);
        let a = Subspace::coordinate(f, 2, &[0]);
        let b = Subspace::coordinate(f, 2, &[1]);
        assert!(a.sum(&b).unwrap().is_full());
        assert!(a.intersect(&b).unwrap().is_zero());
    }

    #[test]
    fn quotient_kernel_is_subspace() {
        let f = gf(3);
        let w = Subspace::from_rows(f, 4, vec![vec![1, 1, 0, 2], vec![0, 0, 1, 1]]);
        let q = w.quotient_map();
        assert_eq!(q.matrix.kernel(), w);
        assert_eq!(q.matrix.rank(), 2);
        for u in [vec![1, 0], vec![0, 1], vec![2, 1]] {
            assert_eq!(q.apply(&q.lift(&u)).unwrap(), u);
        }
    }

    #[test]
    fn mismatches_error() {
        let a = Subspace::zero(gf(2), 2);
        let b = Subspace::zero(gf(3), 2);
        let c = Subspace::zero(gf(2), 3);
        assert!(matches!(a.sum(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.intersect(&c), Err(Error::DimensionMismatch { .. })));
        assert!(a.contains(&[0, 0, 0]).is_err());
    }

    #[test]
    fn preimage_of_zero_is_kernel() {
        let f = gf(2);
        let x = Matrix::from_rows(f, 3, &[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]).unwrap();
        let z = Subspace::zero(f, 3);
        assert_eq!(z.preimage_under(&x).unwrap(), x.kernel());
        let line = Subspace::coordinate(f, 3, &[0]);
        assert_eq!(line.preimage_under(&x).unwrap(), Subspace::coordinate(f, 3, &[0, 1]));
    }

    #[test]
    fn json_roundtrip_and_rejection() {
        let f = gf(3);
        let s = Subspace::from_rows(f, 3, vec![vec![1, 2, 0], vec![0, 0, 1]]);
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<Subspace>(&j).unwrap(), s);
        let bad = r#"{"p":3,"n":2,"pivots":[0],"entries":[2,1]}"#;
        assert!(serde_json::from_str::<Subspace>(bad).is_err());
    }
}

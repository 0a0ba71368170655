//! Exhaustive enumeration of subspaces by RREF pivot pattern.

use super::field::PrimeField;
use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// All `d`-dimensional subspaces of GF(p)^m as RREF coefficient matrices.
///
/// For each pivot set (in lexicographic order) the free entries are the
/// positions right of a row's pivot that are not themselves pivot columns;
/// they run through all `p^k` assignments as a mixed-radix counter.
struct CoordinateSubspaces {
    field: PrimeField,
    m: usize,
    d: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    counter: Vec<u32>,
}

impl CoordinateSubspaces {
    fn new(field: PrimeField, m: usize, d: usize) -> Self {
        let pivots = (d <= m).then(|| (0..d).collect::<Vec<_>>());
        let mut it = CoordinateSubspaces { field, m, d, pivots, free: Vec::new(), counter: Vec::new() };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        if let Some(piv) = &self.pivots {
            let mut is_pivot = vec![false; self.m];
            for &c in piv {
                is_pivot[c] = true;
            }
            for (t, &pc) in piv.iter().enumerate() {
                for c in pc + 1..self.m {
                    if !is_pivot[c] {
                        self.free.push((t, c));
                    }
                }
            }
        }
        self.counter = vec![0; self.free.len()];
    }

    fn next_combination(&mut self) {
        let Some(piv) = self.pivots.as_mut() else { return };
        let (m, d) = (self.m, self.d);
        let mut i = d;
        while i > 0 {
            i -= 1;
            if piv[i] < m - d + i {
                piv[i] += 1;
                for k in i + 1..d {
                    piv[k] = piv[k - 1] + 1;
                }
                self.reset_free();
                return;
            }
        }
        self.pivots = None;
    }

    fn current(&self) -> Matrix {
        let piv = self.pivots.as_ref().unwrap();
        let mut mat = Matrix::zeros(self.field, self.d, self.m);
        for (t, &pc) in piv.iter().enumerate() {
            mat.set(t, pc, 1);
        }
        for (&(t, c), &v) in self.free.iter().zip(&self.counter) {
            mat.set(t, c, v);
        }
        mat
    }

    /// Advances the counter; returns false when it wraps.
    fn bump(&mut self) -> bool {
        let p = self.field.p();
        for digit in self.counter.iter_mut() {
            *digit += 1;
            if *digit < p {
                return true;
            }
            *digit = 0;
        }
        false
    }
}

impl Iterator for CoordinateSubspaces {
    type Item = (Matrix, Vec<usize>);

    fn next(&mut self) -> Option<Self::Item> {
        let piv = self.pivots.clone()?;
        let out = self.current();
        if !self.bump() {
            self.next_combination();
        }
        Some((out, piv))
    }
}

/// Every `d`-dimensional subspace of `ambient`, each exactly once, as a lazy stream.
pub fn enumerate_subspaces(ambient: &Subspace, d: usize) -> impl Iterator<Item = Subspace> + Send + 'static {
    let basis = ambient.basis().clone();
    let amb_pivots = ambient.pivots().to_vec();
    CoordinateSubspaces::new(ambient.field(), ambient.dim(), d).map(move |(coeffs, piv)| {
        // coeffs is RREF and the ambient basis is RREF, so the product is RREF
        // with pivots at the ambient pivots selected by `piv`.
        let rows = coeffs.mul(&basis).expect("shapes agree");
        let pivots = piv.iter().map(|&t| amb_pivots[t]).collect();
        Subspace::from_rref(rows, pivots)
    })
}

/// Every `U` with `lower ⊆ U ⊆ upper` and `dim U = d`.
pub fn enumerate_between(lower: &Subspace, upper: &Subspace, d: usize) -> Result<Box<dyn Iterator<Item = Subspace> + Send>> {
    if !lower.is_subspace_of(upper)? || d < lower.dim() || d > upper.dim() {
        return Ok(Box::new(std::iter::empty()));
    }
    if lower.is_zero() {
        return Ok(Box::new(enumerate_subspaces(upper, d)));
    }
    let q = lower.quotient_map();
    let image = upper.image_under(&q.matrix)?;
    let lower = lower.clone();
    let n = lower.ambient_dim();
    let f = lower.field();
    Ok(Box::new(enumerate_subspaces(&image, d - lower.dim()).map(move |s| {
        let mut rows = lower.basis_rows();
        rows.extend(s.basis_rows().iter().map(|u| q.lift(u)));
        Subspace::from_rows(f, n, rows)
    })))
}

/// Gaussian binomial `[m choose d]_q`.
pub fn gaussian_binomial(m: usize, d: usize, q: u64) -> Result<u128> {
    if d > m {
        return Err(Error::DimensionMismatch { expected: m, found: d });
    }
    // row[k] = [i choose k]_q, built up by [i, k] = [i-1, k-1] + q^k [i-1, k]
    let mut row = vec![0u128; d + 1];
    row[0] = 1;
    for i in 1..=m {
        for k in (1..=d.min(i)).rev() {
            let qk = (q as u128).checked_pow(k as u32).ok_or(Error::Overflow)?;
            row[k] = qk.checked_mul(row[k]).and_then(|v| v.checked_add(row[k - 1])).ok_or(Error::Overflow)?;
        }
    }
    Ok(row[d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn lines_in_planes() {
        assert_eq!(enumerate_subspaces(&Subspace::full(gf(2), 2), 1).count(), 3);
        assert_eq!(enumerate_subspaces(&Subspace::full(gf(3), 2), 1).count(), 4);
    }

    #[test]
    fn dimension_zero_is_only_zero() {
        let all: Vec<_> = enumerate_subspaces(&Subspace::full(gf(5), 3), 0).collect();
        assert_eq!(all, vec![Subspace::zero(gf(5), 3)]);
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), 3);
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), 35);
        assert_eq!(gaussian_binomial(7, 0, 11).unwrap(), 1);
        assert_eq!(gaussian_binomial(3, 3, 11).unwrap(), 1);
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    /// Independent count: distinct spans of all d-tuples of vectors in GF(2)^4.
    #[test]
    fn two_planes_in_gf2_4_by_brute_force() {
        let f = gf(2);
        let vectors: Vec<Vec<u32>> = (0u32..16).map(|b| (0..4).map(|i| (b >> i) & 1).collect()).collect();
        let mut seen = HashSet::new();
        for a in &vectors {
            for b in &vectors {
                let s = Subspace::from_rows(f, 4, vec![a.clone(), b.clone()]);
                if s.dim() == 2 {
                    seen.insert(s);
                }
            }
        }
        assert_eq!(seen.len(), 35);
        let enumerated: HashSet<_> = enumerate_subspaces(&Subspace::full(f, 4), 2).collect();
        assert_eq!(enumerated, seen);
    }

    #[test]
    fn enumeration_inside_a_proper_ambient() {
        let f = gf(3);
        let amb = Subspace::from_rows(f, 4, vec![vec![1, 1, 0, 0], vec![0, 0, 1, 2], vec![0, 1, 0, 1]]);
        let subs: Vec<_> = enumerate_subspaces(&amb, 2).collect();
        assert_eq!(subs.len() as u128, gaussian_binomial(3, 2, 3).unwrap());
        for s in &subs {
            assert!(s.is_subspace_of(&amb).unwrap());
            assert_eq!(Subspace::from_rows(f, 4, s.basis_rows()), *s);
        }
    }

    #[test]
    fn between_counts() {
        let f = gf(2);
        let lower = Subspace::coordinate(f, 4, &[0]);
        let upper = Subspace::full(f, 4);
        let subs: Vec<_> = enumerate_between(&lower, &upper, 2).unwrap().collect();
        assert_eq!(subs.len() as u128, gaussian_binomial(3, 1, 2).unwrap());
        assert!(subs.iter().all(|s| lower.is_subspace_of(s).unwrap() && s.dim() == 2));
        assert_eq!(enumerate_between(&upper, &lower, 2).unwrap().count(), 0);
    }
}

//! Normal basis realizations of enhanced nilpotent pairs `(v, x)`, their
//! torus weights, orbit classification, and splittings of non-distinguished pairs.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{is_distinguished, transpose, Bipartition, Partition};
use crate::error::{Error, Result};
use crate::gf::{Matrix, PrimeField, Subspace};

/// A pair `(v, x)` on GF(p)^n whose coordinate vectors carry integer weights,
/// with `x` raising weight by one and `v` homogeneous of weight 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPair {
    pub x: Matrix,
    pub v: Vec<u32>,
    pub weights: Vec<i64>,
}

impl GradedPair {
    pub fn new(x: Matrix, v: Vec<u32>, weights: Vec<i64>) -> Result<Self> {
        let n = x.rows();
        if !x.is_square() {
            return Err(Error::DimensionMismatch { expected: n, found: x.cols() });
        }
        for len in [v.len(), weights.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, found: len });
            }
        }
        Ok(GradedPair { x, v, weights })
    }

    pub fn field(&self) -> PrimeField {
        self.x.field()
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn distinct_weights(&self) -> Vec<i64> {
        self.weights.iter().copied().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Coordinate span of the basis vectors of weight `w`.
    pub fn weight_space(&self, w: i64) -> Subspace {
        let idx: Vec<usize> = (0..self.n()).filter(|&i| self.weights[i] == w).collect();
        Subspace::coordinate(self.field(), self.n(), &idx)
    }

    /// Span of basis vectors of weight `>= w`.
    pub fn weight_at_least(&self, w: i64) -> Subspace {
        let idx: Vec<usize> = (0..self.n()).filter(|&i| self.weights[i] >= w).collect();
        Subspace::coordinate(self.field(), self.n(), &idx)
    }

    /// Whether `s` is the direct sum of its intersections with the weight spaces.
    pub fn is_graded(&self, s: &Subspace) -> Result<bool> {
        let mut total = 0;
        for w in self.distinct_weights() {
            total += s.intersect(&self.weight_space(w))?.dim();
        }
        Ok(total == s.dim())
    }

    /// Smallest graded subspace containing `u`: the span of its homogeneous components.
    pub fn homogeneous_components(&self, u: &[u32]) -> Vec<Vec<u32>> {
        self.distinct_weights()
            .into_iter()
            .map(|w| u.iter().zip(&self.weights).map(|(&a, &wt)| if wt == w { a } else { 0 }).collect::<Vec<u32>>())
            .filter(|c| c.iter().any(|&a| a != 0))
            .collect()
    }

    /// The pair on an `x`-stable graded subspace, in its RREF basis (whose rows are homogeneous).
    pub fn restrict(&self, s: &Subspace, v: &[u32]) -> Result<GradedPair> {
        if !s.is_stable_under(&self.x)? || !self.is_graded(s)? || !s.contains(v)? {
            return Err(Error::Classification("restriction needs an x-stable graded subspace containing v".into()));
        }
        let f = self.field();
        let k = s.dim();
        let mut x = Matrix::zeros(f, k, k);
        let rows = s.basis_rows();
        for (c, b) in rows.iter().enumerate() {
            let image = self.x.mul_vec(b)?;
            for (r, coef) in s.coordinates_of(&image).into_iter().enumerate() {
                x.set(r, c, coef);
            }
        }
        let weights = s.pivots().iter().map(|&pc| self.weights[pc]).collect();
        GradedPair::new(x, s.coordinates_of(v), weights)
    }

    /// The induced pair on `V / w` for an `x`-stable graded `w`.
    pub fn quotient(&self, w: &Subspace) -> Result<GradedPair> {
        if !w.is_stable_under(&self.x)? || !self.is_graded(w)? {
            return Err(Error::Classification("quotient needs an x-stable graded subspace".into()));
        }
        let q = w.quotient_map();
        let x = q.induced(&self.x)?;
        let v = q.apply(&self.v)?;
        let weights = q.free.iter().map(|&c| self.weights[c]).collect();
        GradedPair::new(x, v, weights)
    }
}

/// The normal basis pair of a bipartition, coordinates in row-major box order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalPair {
    pub bipartition: Bipartition,
    /// Box `(i, j)` of each coordinate, both 1-based.
    pub labels: Vec<(usize, usize)>,
    pub pair: GradedPair,
}

#[derive(Serialize, Deserialize)]
struct NormalPairWire {
    bipartition: Bipartition,
    p: u32,
    x: Vec<Vec<u32>>,
    v: Vec<u32>,
    weights: Vec<i64>,
}

impl NormalPair {
    pub fn p(&self) -> u32 {
        self.field().p()
    }

    pub fn field(&self) -> PrimeField {
        self.pair.field()
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn x(&self) -> &Matrix {
        &self.pair.x
    }

    pub fn v(&self) -> &[u32] {
        &self.pair.v
    }

    pub fn weights(&self) -> &[i64] {
        &self.pair.weights
    }

    pub fn index_of(&self, row: usize, col: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == (row, col))
    }

    /// Coordinate span of whole diagram rows.
    pub fn rows_span(&self, rows: &[usize]) -> Subspace {
        let idx: Vec<usize> = (0..self.n()).filter(|&k| rows.contains(&self.labels[k].0)).collect();
        Subspace::coordinate(self.field(), self.n(), &idx)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&NormalPairWire {
            bipartition: self.bipartition.clone(),
            p: self.p(),
            x: self.x().to_rows(),
            v: self.v().to_vec(),
            weights: self.weights().to_vec(),
        })
        .expect("serializable")
    }

    /// Parses and validates against a fresh construction.
    pub fn from_json(s: &str) -> Result<NormalPair> {
        const MAX_N: usize = 64;
        let w: NormalPairWire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let f = PrimeField::new(w.p)?;
        let n = w.bipartition.n();
        if n > MAX_N {
            return Err(Error::Parse(format!("n = {n} exceeds {MAX_N}")));
        }
        let np = normal_pair(&w.bipartition, f);
        if w.x != np.x().to_rows() || w.v != np.v() || w.weights != np.weights() {
            return Err(Error::Parse("data does not match the normal form of the bipartition".into()));
        }
        Ok(np)
    }
}

/// Row-major normal basis: `x` shifts each box one step left, `v` sums the
/// boxes `(i, alpha_i)`, and box `(i, j)` has weight `alpha_i - j`.
pub fn normal_pair(b: &Bipartition, field: PrimeField) -> NormalPair {
    let mut labels = Vec::with_capacity(b.n());
    for i in 1..=b.rows() {
        for j in 1..=b.row_len(i) {
            labels.push((i, j));
        }
    }
    let n = labels.len();
    let index = |i: usize, j: usize| labels.iter().position(|&l| l == (i, j)).unwrap();
    let mut x = Matrix::zeros(field, n, n);
    let mut weights = Vec::with_capacity(n);
    for (k, &(i, j)) in labels.iter().enumerate() {
        if j > 1 {
            x.set(index(i, j - 1), k, 1);
        }
        weights.push(b.mu.part(i) as i64 - j as i64);
    }
    let mut v = vec![0; n];
    for i in 1..=b.mu.len() {
        v[index(i, b.mu.part(i))] = 1;
    }
    NormalPair { bipartition: b.clone(), labels, pair: GradedPair { x, v, weights } }
}

fn is_nilpotent(x: &Matrix) -> Result<bool> {
    Ok(x.pow(x.rows() as u32)?.is_zero())
}

/// Jordan type from the corank sequence `dim ker x^k`.
pub fn jordan_type(x: &Matrix) -> Result<Partition> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch { expected: x.rows(), found: x.cols() });
    }
    if !is_nilpotent(x)? {
        return Err(Error::NotNilpotent);
    }
    let n = x.rows();
    let mut dual = Vec::new();
    let mut prev = 0;
    let mut power = Matrix::identity(x.field(), n);
    while prev < n {
        power = power.mul(x)?;
        let k = n - power.rank();
        dual.push(k - prev);
        prev = k;
    }
    Ok(transpose(&Partition::from_unsorted(dual)))
}

/// Linear system in the `n * n` entries of `y` (row-major) whose rows are the
/// entries of `yx - xy`.
pub(crate) fn commutator_system(x: &Matrix) -> Matrix {
    let n = x.rows();
    let f = x.field();
    let mut sys = Matrix::zeros(f, n * n, n * n);
    // equation (a, b): sum_k y[a][k] x[k][b] - x[a][k] y[k][b] = 0
    for a in 0..n {
        for b in 0..n {
            let eq = a * n + b;
            for k in 0..n {
                let u = a * n + k;
                sys.set(eq, u, f.add(sys.get(eq, u), x.get(k, b)));
                let w = k * n + b;
                sys.set(eq, w, f.sub(sys.get(eq, w), x.get(a, k)));
            }
        }
    }
    sys
}

/// Basis of `{y : yx = xy}`.
pub fn centralizer_basis(x: &Matrix) -> Result<Vec<Matrix>> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch { expected: x.rows(), found: x.cols() });
    }
    let n = x.rows();
    let f = x.field();
    let ker = commutator_system(x).kernel();
    Ok(ker
        .basis_rows()
        .into_iter()
        .map(|row| {
            let rows: Vec<Vec<i64>> = row.chunks(n.max(1)).map(|c| c.iter().map(|&e| e as i64).collect()).collect();
            Matrix::from_rows(f, n, &rows).unwrap()
        })
        .collect())
}

/// `E^x v`: the span of `y v` over the centralizer of `x`.
pub fn centralizer_orbit_span(v: &[u32], x: &Matrix) -> Result<Subspace> {
    let rows = centralizer_basis(x)?.iter().map(|y| y.mul_vec(v)).collect::<Result<Vec<_>>>()?;
    Subspace::span(x.field(), x.rows(), &rows)
}

/// Orbit type of an arbitrary pair: `mu` is the Jordan type of `x` on
/// `W = E^x v`, `nu` the Jordan type induced on `V / W`.
pub fn classify_pair(v: &[u32], x: &Matrix) -> Result<Bipartition> {
    let n = x.rows();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    if !x.is_square() {
        return Err(Error::DimensionMismatch { expected: n, found: x.cols() });
    }
    if !is_nilpotent(x)? {
        return Err(Error::NotNilpotent);
    }
    let w = centralizer_orbit_span(v, x)?;
    if !w.is_stable_under(x)? {
        return Err(Error::Classification("E^x v is not x-stable".into()));
    }
    let d = w.dim();
    let full = Subspace::full(x.field(), n);
    let mut ker_sub = Vec::new();
    let mut ker_quot = Vec::new();
    let (mut sub_img, mut full_img) = (w.clone(), full);
    let (mut prev_sub, mut prev_quot) = (0, 0);
    loop {
        sub_img = sub_img.image_under(x)?;
        full_img = full_img.image_under(x)?;
        let ks = d - sub_img.dim();
        let kq = (n - d) - (full_img.sum(&w)?.dim() - d);
        ker_sub.push(ks - prev_sub);
        ker_quot.push(kq - prev_quot);
        prev_sub = ks;
        prev_quot = kq;
        if ks == d && kq == n - d {
            break;
        }
    }
    let mu = transpose(&Partition::from_unsorted(ker_sub));
    let nu = transpose(&Partition::from_unsorted(ker_quot));
    if mu.size() + nu.size() != n {
        return Err(Error::Classification(format!("|mu| + |nu| = {} != {n}", mu.size() + nu.size())));
    }
    Ok(Bipartition::new(mu, nu))
}

/// Span of the basis vectors of nonnegative weight.
pub fn nonneg_part(np: &NormalPair) -> Subspace {
    np.pair.weight_at_least(0)
}

/// A splitting `V = V1 ⊕ V2` into `x`-stable graded summands with `v` in `V1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub v1: Subspace,
    pub v2: Subspace,
}

impl Decomposition {
    /// Every violated splitting condition, empty when valid and nontrivial.
    pub fn violations(&self, pair: &GradedPair) -> Result<Vec<String>> {
        let mut out = Vec::new();
        let n = pair.n();
        if self.v1.dim() + self.v2.dim() != n || !self.v1.intersect(&self.v2)?.is_zero() {
            out.push("not a direct sum".to_string());
        }
        for (name, s) in [("V1", &self.v1), ("V2", &self.v2)] {
            if s.is_zero() {
                out.push(format!("{name} is zero"));
            }
            if !s.is_stable_under(&pair.x)? {
                out.push(format!("{name} is not x-stable"));
            }
            if !pair.is_graded(s)? {
                out.push(format!("{name} is not graded"));
            }
        }
        if !self.v1.contains(&pair.v)? {
            out.push("v not in V1".to_string());
        }
        Ok(out)
    }
}

/// Which of the three splitting constructions produced a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "l", rename_all = "snake_case")]
pub enum Construction {
    /// `l(beta) > l(alpha)`: row `l(alpha) + 1` splits off.
    ExtraRow(usize),
    /// `alpha_l = alpha_{l+1}`.
    EqualAlpha(usize),
    /// `beta_l = beta_{l+1}`.
    EqualBeta(usize),
}

/// Splits a non-distinguished normal pair, trying the extra-row construction,
/// then equal `alpha` parts, then equal `beta` parts (smallest `l` first).
pub fn explicit_decomposition(np: &NormalPair) -> Result<(Decomposition, Construction)> {
    let b = &np.bipartition;
    if is_distinguished(b) {
        return Err(Error::Distinguished);
    }
    let f = np.field();
    let n = np.n();
    let (alpha, beta) = (&b.mu, &b.nu);
    let k = alpha.len();
    let all_rows: Vec<usize> = (1..=b.rows()).collect();
    let others = |skip: &[usize]| -> Vec<usize> { all_rows.iter().copied().filter(|r| !skip.contains(r)).collect() };
    let e = |i: usize, j: usize| -> Vec<u32> {
        let mut u = vec![0; n];
        u[np.index_of(i, j).expect("box in diagram")] = 1;
        u
    };
    let add = |a: &[u32], c: &[u32]| -> Vec<u32> { a.iter().zip(c).map(|(&s, &t)| f.add(s, t)).collect() };

    if beta.len() > k {
        let row = k + 1;
        let v2 = np.rows_span(&[row]);
        let v1 = np.rows_span(&others(&[row]));
        return Ok((Decomposition { v1, v2 }, Construction::ExtraRow(row)));
    }
    if let Some(l) = (1..k).find(|&l| alpha.part(l) == alpha.part(l + 1)) {
        let v2 = np.rows_span(&[l]);
        let mut rows = np.rows_span(&others(&[l, l + 1])).basis_rows();
        for j in 1..=b.row_len(l + 1) {
            rows.push(add(&e(l, j), &e(l + 1, j)));
        }
        let v1 = Subspace::from_rows(f, n, rows);
        return Ok((Decomposition { v1, v2 }, Construction::EqualAlpha(l)));
    }
    let padded = beta.padded(k);
    if let Some(l) = (1..k).find(|&l| padded[l - 1] == padded[l]) {
        let bl = beta.part(l);
        let v2 = np.rows_span(&[l + 1]);
        let mut rows = np.rows_span(&others(&[l, l + 1])).basis_rows();
        let mut u = add(&e(l, alpha.part(l) + bl), &e(l + 1, alpha.part(l + 1) + bl));
        while u.iter().any(|&a| a != 0) {
            rows.push(u.clone());
            u = np.x().mul_vec(&u)?;
        }
        let v1 = Subspace::from_rows(f, n, rows);
        return Ok((Decomposition { v1, v2 }, Construction::EqualBeta(l)));
    }
    Err(Error::Classification(format!("no construction applies to {b}")))
}

/// Rank of `y -> (y v, [y, x])` on the weight-nondecreasing endomorphisms,
/// and the dimension of `V^{>=0} x u_P` it should reach.
pub fn dense_orbit_tangent(np: &NormalPair) -> Result<(usize, usize)> {
    let n = np.n();
    let f = np.field();
    let w = np.weights();
    let x = np.x();
    let allowed: Vec<(usize, usize)> =
        (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| w[r] >= w[c]).collect();
    // one column per allowed entry of y; rows: n for y v, n*n for yx - xy
    let mut m = Matrix::zeros(f, n + n * n, allowed.len());
    for (col, &(r, c)) in allowed.iter().enumerate() {
        // y = E_{rc}: y v = v[c] e_r
        m.set(r, col, np.v()[c]);
        // (E_rc x)[r][b] = x[c][b];  (x E_rc)[a][c] = x[a][r]
        for b in 0..n {
            let idx = n + r * n + b;
            m.set(idx, col, f.add(m.get(idx, col), x.get(c, b)));
        }
        for a in 0..n {
            let idx = n + a * n + c;
            m.set(idx, col, f.sub(m.get(idx, col), x.get(a, r)));
        }
    }
    let nonneg = w.iter().filter(|&&a| a >= 0).count();
    let radical = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| w[r] > w[c]).count();
    Ok((m.rank(), nonneg + radical))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::bipartitions;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn bp(mu: &[usize], nu: &[usize]) -> Bipartition {
        Bipartition::from_parts(mu, nu)
    }

    #[test]
    fn worked_example_vector() {
        let np = normal_pair(&bp(&[3, 1, 1], &[3, 2]), gf(2));
        let support: Vec<_> = (0..np.n()).filter(|&k| np.v()[k] != 0).map(|k| np.labels[k]).collect();
        assert_eq!(support, vec![(1, 3), (2, 1), (3, 1)]);
        assert_eq!(jordan_type(np.x()).unwrap().parts(), &[6, 3, 1]);
    }

    #[test]
    fn regular_nilpotent_case() {
        let np = normal_pair(&bp(&[], &[4]), gf(3));
        assert!(np.v().iter().all(|&a| a == 0));
        assert_eq!(jordan_type(np.x()).unwrap().parts(), &[4]);
        assert_eq!(np.weights(), &[-1, -2, -3, -4]);
    }

    #[test]
    fn one_box_with_vector() {
        let np = normal_pair(&bp(&[1], &[]), gf(5));
        assert_eq!(np.n(), 1);
        assert!(np.x().is_zero());
        assert_eq!(np.v(), &[1]);
    }

    #[test]
    fn jordan_type_edge_cases() {
        assert_eq!(jordan_type(&Matrix::zeros(gf(2), 3, 3)).unwrap().parts(), &[1, 1, 1]);
        assert!(matches!(jordan_type(&Matrix::identity(gf(2), 2)), Err(Error::NotNilpotent)));
        assert!(jordan_type(&Matrix::zeros(gf(2), 0, 0)).unwrap().is_empty());
    }

    #[test]
    fn grading_shape() {
        for n in 0..=5 {
            for b in bipartitions(n) {
                let np = normal_pair(&b, gf(3));
                let g = &np.pair;
                assert!(g.weight_space(0).contains(np.v()).unwrap(), "{b}");
                for w in g.distinct_weights() {
                    let image = g.weight_space(w).image_under(np.x()).unwrap();
                    assert!(image.is_subspace_of(&g.weight_space(w + 1)).unwrap(), "{b}");
                }
                let mut rows: Vec<usize> = (1..=b.rows()).map(|i| b.row_len(i)).collect();
                rows.sort_unstable_by(|a, c| c.cmp(a));
                assert_eq!(jordan_type(np.x()).unwrap().parts(), &rows[..]);
            }
        }
    }

    #[test]
    fn centralizer_dimensions() {
        assert_eq!(centralizer_basis(&Matrix::zeros(gf(2), 2, 2)).unwrap().len(), 4);
        for n in 1..=5 {
            let np = normal_pair(&bp(&[], &[n]), gf(3));
            assert_eq!(centralizer_basis(np.x()).unwrap().len(), n);
        }
        // type (6,3,1): sum over pairs of min(lambda_i, lambda_j)
        let np = normal_pair(&bp(&[3, 1, 1], &[3, 2]), gf(2));
        let parts = [6usize, 3, 1];
        let expected: usize = parts.iter().flat_map(|a| parts.iter().map(move |b| (*a).min(*b))).sum();
        assert_eq!(expected, 20);
        assert_eq!(centralizer_basis(np.x()).unwrap().len(), expected);
    }

    #[test]
    fn classify_simple_pairs() {
        let f = gf(2);
        let x = normal_pair(&bp(&[], &[2, 1]), f).x().clone();
        assert_eq!(classify_pair(&[0, 0, 0], &x).unwrap(), bp(&[], &[2, 1]));
        // cyclic vector of a regular nilpotent
        let x = normal_pair(&bp(&[], &[2]), f).x().clone();
        assert_eq!(classify_pair(&[0, 1], &x).unwrap(), bp(&[2], &[]));
        assert_eq!(classify_pair(&[1, 1], &x).unwrap(), bp(&[2], &[]));
        assert_eq!(classify_pair(&[1, 0], &x).unwrap(), bp(&[1], &[1]));
        assert!(classify_pair(&[1, 0], &Matrix::identity(f, 2)).is_err());
    }

    #[test]
    fn nonneg_part_examples() {
        let f = gf(2);
        assert_eq!(nonneg_part(&normal_pair(&bp(&[3, 1, 1], &[3, 2]), f)).dim(), 5);
        assert_eq!(nonneg_part(&normal_pair(&bp(&[], &[3]), f)).dim(), 0);
        assert!(nonneg_part(&normal_pair(&bp(&[3], &[]), f)).is_full());
    }

    #[test]
    fn construction_b_example() {
        let np = normal_pair(&bp(&[2, 2], &[1]), gf(2));
        let (d, c) = explicit_decomposition(&np).unwrap();
        assert_eq!(c, Construction::EqualAlpha(1));
        assert_eq!(d.v2.dim(), 3);
        assert_eq!(d.v1.dim(), 2);
        assert!(d.violations(&np.pair).unwrap().is_empty());
    }

    #[test]
    fn construction_c_and_a_examples() {
        let np = normal_pair(&bp(&[3, 1], &[2, 2]), gf(3));
        let (d, c) = explicit_decomposition(&np).unwrap();
        assert_eq!(c, Construction::EqualBeta(1));
        assert!(d.violations(&np.pair).unwrap().is_empty());
        let np = normal_pair(&bp(&[1], &[1, 1]), gf(2));
        let (d, c) = explicit_decomposition(&np).unwrap();
        assert_eq!(c, Construction::ExtraRow(2));
        assert_eq!(d.v2, np.rows_span(&[2]));
        assert!(d.violations(&np.pair).unwrap().is_empty());
        assert!(matches!(explicit_decomposition(&normal_pair(&bp(&[], &[3]), gf(2))), Err(Error::Distinguished)));
    }

    #[test]
    fn json_roundtrip_validates() {
        let np = normal_pair(&bp(&[2, 1], &[1]), gf(3));
        let s = np.to_json();
        assert_eq!(NormalPair::from_json(&s).unwrap(), np);
        let tampered = s.replace("\"p\":3", "\"p\":4");
        assert!(NormalPair::from_json(&tampered).is_err());
        assert!(NormalPair::from_json("{}").is_err());
    }

    #[test]
    fn graded_quotient_and_restriction() {
        let np = normal_pair(&bp(&[2], &[1]), gf(2));
        let ker = np.x().kernel();
        let q = np.pair.quotient(&ker).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.weights, vec![0, -1]);
        assert_eq!(q.v, vec![1, 0]);
        let r = np.pair.restrict(&Subspace::full(gf(2), 3), np.v()).unwrap();
        assert_eq!(r, np.pair);
    }
}

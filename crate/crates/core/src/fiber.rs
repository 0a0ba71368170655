//! Point counts of the fibers `{flags of shape rho : x(W_i) ⊆ W_{i-1}, v ∈ W_j}`
//! over GF(p), their torus-fixed loci, and the polynomials they interpolate to.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::RwLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{flag_shape, Bipartition, FlagShape};
use crate::error::{Error, Result};
use crate::gf::{enumerate_between, enumerate_subspaces, Flag, Matrix, PrimeField, Subspace};
use crate::normal_form::{classify_pair, commutator_system, normal_pair, GradedPair, NormalPair};
use crate::qpoly::{interpolate_qpoly, PrimeSchedule, QPolynomial};

/// A fiber of the resolution attached to `shape` over the point `(v, x)`.
#[derive(Clone, Debug)]
pub struct FiberQuery {
    pub x: Matrix,
    pub v: Vec<u32>,
    /// Torus weights of the coordinates, present for normal pairs.
    pub weights: Option<Vec<i64>>,
    pub shape: FlagShape,
}

impl FiberQuery {
    pub fn raw(v: Vec<u32>, x: Matrix, shape: FlagShape) -> Result<Self> {
        let q = FiberQuery { x, v, weights: None, shape };
        q.validate()?;
        Ok(q)
    }

    pub fn graded(pair: &GradedPair, shape: FlagShape) -> Result<Self> {
        let q = FiberQuery { x: pair.x.clone(), v: pair.v.clone(), weights: Some(pair.weights.clone()), shape };
        q.validate()?;
        Ok(q)
    }

    pub fn normal(np: &NormalPair, shape: FlagShape) -> Result<Self> {
        FiberQuery::graded(&np.pair, shape)
    }

    fn validate(&self) -> Result<()> {
        let n = self.x.rows();
        if !self.x.is_square() {
            return Err(Error::DimensionMismatch { expected: n, found: self.x.cols() });
        }
        if self.v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.v.len() });
        }
        if self.shape.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.shape.n() });
        }
        if let Some(w) = &self.weights {
            if w.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: w.len() });
            }
        }
        Ok(())
    }

    pub fn field(&self) -> PrimeField {
        self.x.field()
    }

    fn graded_pair(&self) -> Result<GradedPair> {
        let w = self.weights.clone().ok_or(Error::MissingWeights)?;
        GradedPair::new(self.x.clone(), self.v.clone(), w)
    }
}

fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&a| a == 0)
}

/// Choices of `W_1`: subspaces of `ker x` of dimension `r_1`.
fn first_steps(x: &Matrix, r1: usize) -> Vec<Subspace> {
    enumerate_subspaces(&x.kernel(), r1).collect()
}

/// Exact fiber count by recursion on `W_1 ⊆ ker x` and passage to `V / W_1`.
pub fn count_fiber(q: &FiberQuery) -> Result<u64> {
    q.validate()?;
    count_rec(&q.v, &q.x, q.shape.dims(), q.shape.j(), true)
}

fn count_rec(v: &[u32], x: &Matrix, dims: &[usize], j: usize, top: bool) -> Result<u64> {
    if j == 0 && !is_zero(v) {
        return Ok(0);
    }
    if dims.len() == 1 {
        return Ok(1);
    }
    let r1 = dims[1];
    let rest: Vec<usize> = dims[1..].iter().map(|d| d - r1).collect();
    let jbar = j.saturating_sub(1);
    let step = |w: &Subspace| -> Result<u64> {
        let qm = w.quotient_map();
        let xb = qm.induced(x)?;
        let vb = qm.apply(v)?;
        count_rec(&vb, &xb, &rest, jbar, false)
    };
    let candidates = first_steps(x, r1);
    if top {
        candidates.par_iter().map(step).try_reduce(|| 0, |a, b| Ok(a + b))
    } else {
        candidates.iter().map(step).sum()
    }
}

/// Orbit-type memo key: counts depend only on the orbit of the pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MemoKey {
    pub orbit: Bipartition,
    pub dims: Vec<usize>,
    pub j: usize,
    pub p: u32,
}

impl MemoKey {
    fn validate(&self) -> Result<()> {
        let shape = FlagShape::new(self.dims.clone(), self.j)?;
        if shape.n() != self.orbit.n() {
            return Err(Error::Cache(format!("orbit {} does not live in dimension {}", self.orbit, shape.n())));
        }
        PrimeField::new(self.p)?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

pub const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheLine {
    version: u32,
    key: MemoKey,
    count: u64,
}

/// Parses one line of the on-disk count cache.
pub fn parse_cache_line(line: &str) -> Result<(MemoKey, u64)> {
    let entry: CacheLine = serde_json::from_str(line).map_err(|e| Error::Cache(e.to_string()))?;
    if entry.version != CACHE_VERSION {
        return Err(Error::Cache(format!("unsupported cache version {}", entry.version)));
    }
    entry.key.validate()?;
    Ok((entry.key, entry.count))
}

/// Memoized fiber counter shared across queries and threads.
///
/// Lookups take a read lock; inserts take the write lock only to store a
/// finished value. No lock is held while a sub-count runs, so two threads may
/// compute the same entry; both store the same value.
#[derive(Debug, Default)]
pub struct FiberCounter {
    memo: RwLock<HashMap<MemoKey, u64>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl FiberCounter {
    pub fn new() -> Self {
        FiberCounter::default()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.memo.read().unwrap().len(),
        }
    }

    pub fn count(&self, q: &FiberQuery) -> Result<u64> {
        q.validate()?;
        self.count_pair(&q.v, &q.x, q.shape.dims(), q.shape.j(), true)
    }

    fn count_pair(&self, v: &[u32], x: &Matrix, dims: &[usize], j: usize, top: bool) -> Result<u64> {
        if j == 0 && !is_zero(v) {
            return Ok(0);
        }
        if dims.len() == 1 {
            return Ok(1);
        }
        let key = MemoKey { orbit: classify_pair(v, x)?, dims: dims.to_vec(), j, p: x.field().p() };
        if let Some(&c) = self.memo.read().unwrap().get(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(c);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let r1 = dims[1];
        let rest: Vec<usize> = dims[1..].iter().map(|d| d - r1).collect();
        let jbar = j.saturating_sub(1);
        let step = |w: &Subspace| -> Result<u64> {
            let qm = w.quotient_map();
            let vb = qm.apply(v)?;
            if jbar == 0 && !is_zero(&vb) {
                return Ok(0);
            }
            let xb = qm.induced(x)?;
            self.count_pair(&vb, &xb, &rest, jbar, false)
        };
        let candidates = first_steps(x, r1);
        let total = if top {
            candidates.par_iter().map(step).try_reduce(|| 0, |a, b| Ok(a + b))?
        } else {
            candidates.iter().map(step).sum::<Result<u64>>()?
        };
        self.memo.write().unwrap().insert(key, total);
        Ok(total)
    }

    /// Counts over the normal point of `small` in the resolution attached to `big`.
    pub fn count_over_orbit(&self, big: &Bipartition, small: &Bipartition, p: u32) -> Result<u64> {
        if big.n() != small.n() {
            return Err(Error::DimensionMismatch { expected: big.n(), found: small.n() });
        }
        let np = normal_pair(small, PrimeField::new(p)?);
        self.count(&FiberQuery::normal(&np, flag_shape(big))?)
    }

    pub fn closure_contains(&self, big: &Bipartition, small: &Bipartition, p: u32) -> Result<bool> {
        Ok(self.count_over_orbit(big, small, p)? > 0)
    }

    /// Writes all entries as versioned JSON lines in key order.
    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        let memo = self.memo.read().unwrap();
        let mut entries: Vec<_> = memo.iter().collect();
        entries.sort();
        for (key, &count) in entries {
            let line = serde_json::to_string(&CacheLine { version: CACHE_VERSION, key: key.clone(), count })
                .map_err(|e| Error::Cache(e.to_string()))?;
            writeln!(out, "{line}").map_err(|e| Error::Cache(e.to_string()))?;
        }
        Ok(())
    }

    /// Loads cache lines; blank lines are skipped, malformed lines are errors.
    pub fn load<R: BufRead>(&self, input: R) -> Result<usize> {
        let mut loaded = 0;
        let mut memo = self.memo.write().unwrap();
        for line in input.lines() {
            let line = line.map_err(|e| Error::Cache(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let (key, count) = parse_cache_line(&line)?;
            memo.insert(key, count);
            loaded += 1;
        }
        Ok(loaded)
    }

    pub fn save_to_path(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        self.save(std::io::BufWriter::new(file))
    }

    /// Loads from `path` if it exists.
    pub fn load_from_path(&self, path: &Path) -> Result<usize> {
        if !path.exists() {
            return Ok(0);
        }
        let file = std::fs::File::open(path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
        self.load(std::io::BufReader::new(file))
    }
}

/// Visits every flag of the fiber, built step by step inside `V`:
/// `W_i` runs over subspaces between `W_{i-1}` (plus `v` when `i = j`) and
/// `x^{-1}(W_{i-1})`; with `graded` only weight-homogeneous subspaces are used.
fn walk_flags(q: &FiberQuery, graded: Option<&GradedPair>, visit: &mut dyn FnMut(&[Subspace]) -> Result<()>) -> Result<()> {
    q.validate()?;
    let f = q.field();
    let n = q.x.rows();
    if q.shape.j() == 0 && !is_zero(&q.v) {
        return Ok(());
    }
    let mut chain = Vec::with_capacity(q.shape.len());
    walk_rec(q, graded, &Subspace::zero(f, n), 1, &mut chain, visit)
}

fn walk_rec(
    q: &FiberQuery,
    graded: Option<&GradedPair>,
    prev: &Subspace,
    i: usize,
    chain: &mut Vec<Subspace>,
    visit: &mut dyn FnMut(&[Subspace]) -> Result<()>,
) -> Result<()> {
    if i > q.shape.len() {
        return visit(chain);
    }
    let mut lower = prev.clone();
    if i == q.shape.j() {
        match graded {
            Some(g) => {
                for c in g.homogeneous_components(&q.v) {
                    lower = lower.with_vector(&c)?;
                }
            }
            None => lower = lower.with_vector(&q.v)?,
        }
    }
    let upper = prev.preimage_under(&q.x)?;
    let d = q.shape.dims()[i];
    let candidates: Vec<Subspace> = match graded {
        Some(g) => graded_between(g, &lower, &upper, d)?,
        None => enumerate_between(&lower, &upper, d)?.collect(),
    };
    for w in candidates {
        chain.push(w.clone());
        walk_rec(q, graded, &w, i + 1, chain, visit)?;
        chain.pop();
    }
    Ok(())
}

/// Graded `U` with `lower ⊆ U ⊆ upper`, `dim U = d`, for graded `lower`, `upper`.
pub fn graded_between(g: &GradedPair, lower: &Subspace, upper: &Subspace, d: usize) -> Result<Vec<Subspace>> {
    let weights = g.distinct_weights();
    let mut parts = Vec::with_capacity(weights.len());
    for &w in &weights {
        let ws = g.weight_space(w);
        parts.push((lower.intersect(&ws)?, upper.intersect(&ws)?));
    }
    let mut out = Vec::new();
    let f = g.field();
    let n = g.n();
    fn rec(
        parts: &[(Subspace, Subspace)],
        k: usize,
        remaining: usize,
        acc: &mut Vec<Vec<u32>>,
        out: &mut Vec<Subspace>,
        f: PrimeField,
        n: usize,
    ) -> Result<()> {
        if k == parts.len() {
            if remaining == 0 {
                out.push(Subspace::from_rows(f, n, acc.clone()));
            }
            return Ok(());
        }
        let (lo, hi) = &parts[k];
        let cap_rest: usize = parts[k + 1..].iter().map(|(_, h)| h.dim()).sum();
        let min_rest: usize = parts[k + 1..].iter().map(|(l, _)| l.dim()).sum();
        for dk in lo.dim()..=hi.dim() {
            if dk > remaining || remaining - dk > cap_rest || remaining - dk < min_rest {
                continue;
            }
            for s in enumerate_between(lo, hi, dk)? {
                let before = acc.len();
                acc.extend(s.basis_rows());
                rec(parts, k + 1, remaining - dk, acc, out, f, n)?;
                acc.truncate(before);
            }
        }
        Ok(())
    }
    rec(&parts, 0, d, &mut Vec::new(), &mut out, f, n)?;
    Ok(out)
}

/// Calls `visit` with the steps `W_1, ..., W_m` of every fiber flag, or only
/// of the torus-fixed ones when `lambda_fixed` is set.
pub fn for_each_fiber_flag(q: &FiberQuery, lambda_fixed: bool, visit: &mut dyn FnMut(&[Subspace]) -> Result<()>) -> Result<()> {
    if lambda_fixed {
        let g = q.graded_pair()?;
        walk_flags(q, Some(&g), visit)
    } else {
        walk_flags(q, None, visit)
    }
}

/// All flags of the fiber, enumerated directly in `V`.
pub fn enumerate_fiber(q: &FiberQuery) -> Result<Vec<Flag>> {
    let mut out = Vec::new();
    walk_flags(q, None, &mut |chain| {
        out.push(Flag { steps: chain.to_vec() });
        Ok(())
    })?;
    Ok(out)
}

/// Fiber flags all of whose steps are sums of weight spaces.
pub fn enumerate_lambda_fixed(q: &FiberQuery) -> Result<Vec<Flag>> {
    let g = q.graded_pair()?;
    let mut out = Vec::new();
    walk_flags(q, Some(&g), &mut |chain| {
        out.push(Flag { steps: chain.to_vec() });
        Ok(())
    })?;
    Ok(out)
}

pub fn count_lambda_fixed(q: &FiberQuery) -> Result<u64> {
    let g = q.graded_pair()?;
    let mut count = 0u64;
    walk_flags(q, Some(&g), &mut |_| {
        count += 1;
        Ok(())
    })?;
    Ok(count)
}

/// `dim F_rho = sum_{i<k} d_i d_k` over the step sizes.
pub fn fiber_dimension_bound(shape: &FlagShape) -> usize {
    let steps = shape.steps();
    let mut total = 0;
    for i in 0..steps.len() {
        for k in i + 1..steps.len() {
            total += steps[i] * steps[k];
        }
    }
    total
}

pub const ORBIT_DIMENSION_PRIMES: [u32; 2] = [101, 10007];

/// `n^2 - dim {y : y v = 0, yx = xy}`, with ranks agreeing over two large primes.
pub fn orbit_dimension(b: &Bipartition) -> Result<usize> {
    let mut ranks = Vec::new();
    for p in ORBIT_DIMENSION_PRIMES {
        let np = normal_pair(b, PrimeField::new(p)?);
        let n = np.n();
        let comm = commutator_system(np.x());
        let mut sys = Matrix::zeros(np.field(), n + n * n, n * n);
        // y v = 0: row a is sum_k y[a][k] v[k]
        for a in 0..n {
            for k in 0..n {
                sys.set(a, a * n + k, np.v()[k]);
            }
        }
        for r in 0..n * n {
            for c in 0..n * n {
                sys.set(n + r, c, comm.get(r, c));
            }
        }
        ranks.push((p, sys.rank()));
    }
    if ranks.iter().any(|&(_, r)| r != ranks[0].1) {
        return Err(Error::PrimeDisagreement(ranks));
    }
    Ok(ranks[0].1)
}

/// Whether the orbit of `small` lies in the image of the resolution of `big`.
pub fn closure_contains(big: &Bipartition, small: &Bipartition, p: u32) -> Result<bool> {
    FiberCounter::new().closure_contains(big, small, p)
}

/// Counts at the sampling primes, the interpolated polynomial, and the held-out check.
#[derive(Clone, Debug, Serialize)]
pub struct FiberPolynomial {
    pub big: Bipartition,
    pub small: Bipartition,
    pub shape: FlagShape,
    pub degree_bound: usize,
    pub counts: BTreeMap<u32, u64>,
    pub holdout: u32,
    pub holdout_count: u64,
    #[serde(serialize_with = "ser_poly_result")]
    pub polynomial: std::result::Result<QPolynomial, Error>,
}

fn ser_poly_result<S: serde::Serializer>(r: &std::result::Result<QPolynomial, Error>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Ok(p) => p.serialize(s),
        Err(e) => e.to_string().serialize(s),
    }
}

impl FiberPolynomial {
    pub fn holdout_matches(&self) -> bool {
        match &self.polynomial {
            Ok(p) => p.eval(self.holdout as u64) == self.holdout_count as i128,
            Err(_) => false,
        }
    }

    /// Integer, nonnegative coefficients and a matching held-out prime.
    pub fn is_certificate(&self) -> bool {
        matches!(&self.polynomial, Ok(p) if p.has_nonnegative_coeffs()) && self.holdout_matches()
    }
}

fn sample_polynomial(
    big: &Bipartition,
    small: &Bipartition,
    schedule: &PrimeSchedule,
    degree_bound: Option<usize>,
    mut count: impl FnMut(u32) -> Result<u64>,
) -> Result<FiberPolynomial> {
    if big.n() != small.n() {
        return Err(Error::DimensionMismatch { expected: big.n(), found: small.n() });
    }
    let shape = flag_shape(big);
    let degree_bound = degree_bound.unwrap_or_else(|| fiber_dimension_bound(&shape));
    let (primes, holdout) = schedule.for_degree(degree_bound)?;
    let mut counts = BTreeMap::new();
    for p in primes {
        counts.insert(p, count(p)?);
    }
    let holdout_count = count(holdout)?;
    let polynomial = interpolate_qpoly(&counts, degree_bound);
    Ok(FiberPolynomial { big: big.clone(), small: small.clone(), shape, degree_bound, counts, holdout, holdout_count, polynomial })
}

/// Fiber polynomial of the resolution of `big` over the normal point of `small`.
pub fn fiber_polynomial(counter: &FiberCounter, big: &Bipartition, small: &Bipartition, schedule: &PrimeSchedule) -> Result<FiberPolynomial> {
    sample_polynomial(big, small, schedule, None, |p| counter.count_over_orbit(big, small, p))
}

/// Same, interpolating with a caller-chosen degree bound instead of the flag variety dimension.
pub fn fiber_polynomial_with_bound(
    counter: &FiberCounter,
    big: &Bipartition,
    small: &Bipartition,
    schedule: &PrimeSchedule,
    degree_bound: usize,
) -> Result<FiberPolynomial> {
    sample_polynomial(big, small, schedule, Some(degree_bound), |p| counter.count_over_orbit(big, small, p))
}

/// Half the codimension of `small` in `big`, the largest fiber degree a semismall map allows.
pub fn codimension_bound(big: &Bipartition, small: &Bipartition) -> Result<usize> {
    let (d_big, d_small) = (orbit_dimension(big)?, orbit_dimension(small)?);
    Ok(d_big.saturating_sub(d_small) / 2)
}

/// Same, counting only the torus-fixed flags.
pub fn lambda_fixed_polynomial(big: &Bipartition, small: &Bipartition, schedule: &PrimeSchedule) -> Result<FiberPolynomial> {
    let shape = flag_shape(big);
    sample_polynomial(big, small, schedule, None, |p| {
        let np = normal_pair(small, PrimeField::new(p)?);
        count_lambda_fixed(&FiberQuery::normal(&np, shape.clone())?)
    })
}

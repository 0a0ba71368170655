//! Named verifications with machine-readable reports.
//!
//! Every check returns a [`CheckReport`]. A `Fail` verdict always carries a
//! concrete witness (the counts, polynomial, profile or decomposition that
//! broke the expected identity). Exceeding a search budget is reported as
//! `BudgetExceeded`, never as a pass.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::combinatorics::{bipartitions, flag_shape, is_distinguished, Bipartition, FlagShape};
use crate::error::{Error, Result};
use crate::fiber::{
    count_lambda_fixed, enumerate_lambda_fixed, fiber_dimension_bound, fiber_polynomial, for_each_fiber_flag,
    lambda_fixed_polynomial, orbit_dimension, FiberCounter, FiberQuery,
};
use crate::gf::{enumerate_subspaces, PrimeField, Subspace};
use crate::normal_form::{
    centralizer_orbit_span, classify_pair, dense_orbit_tangent, explicit_decomposition, nonneg_part, normal_pair, Decomposition,
    GradedPair,
};
use crate::qpoly::{interpolate_qpoly, PrimeSchedule};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    BudgetExceeded,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::BudgetExceeded => "budget_exceeded",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: Value,
    pub verdict: Verdict,
    pub witness: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub millis: u64,
}

impl CheckReport {
    fn new(check: CheckKind, inputs: Value, pass: bool, witness: Value, started: Instant) -> Self {
        CheckReport {
            check: check.name().to_string(),
            inputs,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            witness,
            notes: Vec::new(),
            millis: started.elapsed().as_millis() as u64,
        }
    }

    fn budget(check: CheckKind, inputs: Value, budget: u64, started: Instant) -> Self {
        CheckReport {
            check: check.name().to_string(),
            inputs,
            verdict: Verdict::BudgetExceeded,
            witness: json!({ "budget": budget }),
            notes: Vec::new(),
            millis: started.elapsed().as_millis() as u64,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Roundtrip,
    Birational,
    Polynomial,
    AlphaPartition,
    Distinguished,
    SplitProduct,
    KernelRecursion,
    RegularFixed,
    Semismall,
    EulerBridge,
    DenseOrbit,
}

impl CheckKind {
    pub const ALL: [CheckKind; 11] = [
        CheckKind::Roundtrip,
        CheckKind::Birational,
        CheckKind::Polynomial,
        CheckKind::AlphaPartition,
        CheckKind::Distinguished,
        CheckKind::SplitProduct,
        CheckKind::KernelRecursion,
        CheckKind::RegularFixed,
        CheckKind::Semismall,
        CheckKind::EulerBridge,
        CheckKind::DenseOrbit,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Roundtrip => "roundtrip",
            CheckKind::Birational => "birational",
            CheckKind::Polynomial => "polynomial",
            CheckKind::AlphaPartition => "alpha_partition",
            CheckKind::Distinguished => "distinguished",
            CheckKind::SplitProduct => "split_product",
            CheckKind::KernelRecursion => "kernel_recursion",
            CheckKind::RegularFixed => "regular_fixed",
            CheckKind::Semismall => "semismall",
            CheckKind::EulerBridge => "euler_bridge",
            CheckKind::DenseOrbit => "dense_orbit",
        }
    }
}

impl FromStr for CheckKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckKind::ALL
            .into_iter()
            .find(|k| k.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

/// Parses a comma-separated check list; `all` selects everything.
pub fn parse_check_list(s: &str) -> Result<Vec<CheckKind>> {
    if s.trim() == "all" {
        return Ok(CheckKind::ALL.to_vec());
    }
    let mut set = BTreeSet::new();
    for part in s.split(',') {
        set.insert(part.parse::<CheckKind>()?);
    }
    Ok(set.into_iter().collect())
}

/// Shared state for a batch of checks.
#[derive(Debug)]
pub struct CheckContext {
    pub counter: FiberCounter,
    pub schedule: PrimeSchedule,
    pub budget: u64,
}

impl Default for CheckContext {
    fn default() -> Self {
        CheckContext { counter: FiberCounter::new(), schedule: PrimeSchedule::default(), budget: DEFAULT_BUDGET }
    }
}

impl CheckContext {
    pub fn new(schedule: PrimeSchedule, budget: u64) -> Self {
        CheckContext { counter: FiberCounter::new(), schedule, budget }
    }
}

fn pair_inputs(big: &Bipartition, small: &Bipartition) -> Value {
    json!({ "big": big, "small": small })
}

fn field(p: u32) -> Result<PrimeField> {
    PrimeField::new(p)
}

/// `classify_pair(normal_pair(b)) = b` and `V^{>=0} = E^x v`.
pub fn check_roundtrip(b: &Bipartition, p: u32) -> Result<CheckReport> {
    let t = Instant::now();
    let np = normal_pair(b, field(p)?);
    let classified = classify_pair(np.v(), np.x())?;
    let nonneg = nonneg_part(&np);
    let span = centralizer_orbit_span(np.v(), np.x())?;
    let pass = classified == *b && nonneg == span;
    let witness = json!({
        "classified": classified,
        "nonneg_dim": nonneg.dim(),
        "centralizer_span_dim": span.dim(),
        "spans_equal": nonneg == span,
    });
    Ok(CheckReport::new(CheckKind::Roundtrip, json!({ "b": b, "p": p }), pass, witness, t))
}

/// The fiber over the resolution's own normal point is a single point.
pub fn check_birational(ctx: &CheckContext, b: &Bipartition, p: u32) -> Result<CheckReport> {
    let t = Instant::now();
    let count = ctx.counter.count_over_orbit(b, b, p)?;
    Ok(CheckReport::new(CheckKind::Birational, json!({ "b": b, "p": p }), count == 1, json!({ "count": count }), t))
}

/// Interpolated fiber polynomial has nonnegative integer coefficients and
/// predicts the held-out prime.
pub fn check_polynomial_count(ctx: &CheckContext, big: &Bipartition, small: &Bipartition) -> Result<CheckReport> {
    let t = Instant::now();
    if !ctx.counter.closure_contains(big, small, 2)? {
        return Err(Error::Precondition(format!("{small} is not in the closure of {big}")));
    }
    let fp = fiber_polynomial(&ctx.counter, big, small, &ctx.schedule)?;
    let witness = serde_json::to_value(&fp).expect("serializable");
    Ok(CheckReport::new(CheckKind::Polynomial, pair_inputs(big, small), fp.is_certificate(), witness, t))
}

/// Orbit of a flag under the parabolic fixing the weight filtration, as the
/// table `dim(W_i ∩ V^{>=w})` over steps `i` and weights `w` (descending).
fn filtration_profile(pair: &GradedPair, steps: &[Subspace]) -> Result<Vec<Vec<usize>>> {
    let mut ws = pair.distinct_weights();
    ws.reverse();
    let filtration: Vec<Subspace> = ws.iter().map(|&w| pair.weight_at_least(w)).collect();
    steps
        .iter()
        .map(|s| filtration.iter().map(|f| Ok(s.intersect(f)?.dim())).collect::<Result<Vec<_>>>())
        .collect()
}

/// Splits each fiber into pieces by parabolic orbit; checks that piece counts
/// add up to the total at every prime and that each piece count is itself a
/// polynomial with nonnegative integer coefficients.
pub fn check_alpha_partition(ctx: &CheckContext, big: &Bipartition, small: &Bipartition) -> Result<CheckReport> {
    let t = Instant::now();
    let inputs = pair_inputs(big, small);
    if big.n() != small.n() {
        return Err(Error::DimensionMismatch { expected: big.n(), found: small.n() });
    }
    let shape = flag_shape(big);
    let bound = fiber_dimension_bound(&shape);
    let (primes, holdout) = ctx.schedule.for_degree(bound)?;
    let mut pieces: BTreeMap<Vec<Vec<usize>>, BTreeMap<u32, u64>> = BTreeMap::new();
    let mut sums = BTreeMap::new();
    let mut sum_ok = true;
    let mut visited = 0u64;
    for &p in primes.iter().chain(std::iter::once(&holdout)) {
        let np = normal_pair(small, field(p)?);
        let q = FiberQuery::normal(&np, shape.clone())?;
        let mut local: BTreeMap<Vec<Vec<usize>>, u64> = BTreeMap::new();
        let walked = for_each_fiber_flag(&q, false, &mut |steps| {
            visited += 1;
            if visited > ctx.budget {
                return Err(Error::BudgetExceeded(ctx.budget));
            }
            *local.entry(filtration_profile(&np.pair, steps)?).or_default() += 1;
            Ok(())
        });
        match walked {
            Err(Error::BudgetExceeded(b)) => return Ok(CheckReport::budget(CheckKind::AlphaPartition, inputs, b, t)),
            other => other?,
        }
        let total = ctx.counter.count(&q)?;
        let piece_sum: u64 = local.values().sum();
        sum_ok &= piece_sum == total;
        sums.insert(p.to_string(), json!({ "total": total, "piece_sum": piece_sum, "pieces": local.len() }));
        for (profile, c) in local {
            pieces.entry(profile).or_default().insert(p, c);
        }
    }
    let mut piece_ok = true;
    let mut piece_witness = Vec::new();
    for (profile, counts) in &pieces {
        let mut samples = BTreeMap::new();
        for &p in &primes {
            samples.insert(p, counts.get(&p).copied().unwrap_or(0));
        }
        let held = counts.get(&holdout).copied().unwrap_or(0);
        let (poly, ok) = match interpolate_qpoly(&samples, bound) {
            Ok(poly) => {
                let ok = poly.has_nonnegative_coeffs() && poly.eval(holdout as u64) == held as i128;
                (poly.to_string(), ok)
            }
            Err(e) => (e.to_string(), false),
        };
        piece_ok &= ok;
        piece_witness.push(json!({ "profile": profile, "counts": counts, "polynomial": poly, "ok": ok }));
    }
    let witness = json!({ "sums": sums, "pieces": piece_witness });
    Ok(CheckReport::new(CheckKind::AlphaPartition, inputs, sum_ok && piece_ok, witness, t))
}

/// Exhaustive search for an `x`-stable graded splitting `V = V1 ⊕ V2` with `v ∈ V1`.
pub fn find_decomposition(pair: &GradedPair, budget: u64) -> Result<Option<Decomposition>> {
    let f = pair.field();
    let n = pair.n();
    let weights = pair.distinct_weights();
    let spaces: Vec<Subspace> = weights.iter().map(|&w| pair.weight_space(w)).collect();
    let choices: Vec<Vec<Subspace>> =
        spaces.iter().map(|s| (0..=s.dim()).flat_map(|d| enumerate_subspaces(s, d)).collect()).collect();
    let mut nodes = 0u64;
    let tick = |nodes: &mut u64| -> Result<()> {
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExceeded(budget));
        }
        Ok(())
    };
    let combine = |parts: &[&Subspace]| -> Subspace {
        Subspace::from_rows(f, n, parts.iter().flat_map(|s| s.basis_rows()).collect())
    };
    // odometer over one choice per weight space
    let mut idx1 = vec![0usize; choices.len()];
    loop {
        tick(&mut nodes)?;
        let parts: Vec<&Subspace> = idx1.iter().zip(&choices).map(|(&i, c)| &c[i]).collect();
        let v1 = combine(&parts);
        if v1.dim() > 0 && v1.dim() < n && v1.contains(&pair.v)? && v1.is_stable_under(&pair.x)? {
            // complements weight by weight
            let comp: Vec<Vec<&Subspace>> = choices
                .iter()
                .zip(&parts)
                .zip(&spaces)
                .map(|((c, p1), s)| {
                    c.iter()
                        .filter(|u| u.dim() + p1.dim() == s.dim() && u.intersect(p1).map(|i| i.is_zero()).unwrap_or(false))
                        .collect()
                })
                .collect();
            if comp.iter().all(|c| !c.is_empty()) {
                let mut idx2 = vec![0usize; comp.len()];
                loop {
                    tick(&mut nodes)?;
                    let parts2: Vec<&Subspace> = idx2.iter().zip(&comp).map(|(&i, c)| c[i]).collect();
                    let v2 = combine(&parts2);
                    if v2.is_stable_under(&pair.x)? {
                        return Ok(Some(Decomposition { v1, v2 }));
                    }
                    if !advance(&mut idx2, &comp.iter().map(|c| c.len()).collect::<Vec<_>>()) {
                        break;
                    }
                }
            }
        }
        if !advance(&mut idx1, &choices.iter().map(|c| c.len()).collect::<Vec<_>>()) {
            return Ok(None);
        }
    }
}

fn advance(idx: &mut [usize], radix: &[usize]) -> bool {
    for (i, r) in idx.iter_mut().zip(radix) {
        *i += 1;
        if *i < *r {
            return true;
        }
        *i = 0;
    }
    false
}

/// Brute-force splitting existence agrees with the distinguished predicate;
/// for non-distinguished inputs the explicit construction must also be valid.
pub fn check_distinguished_lemma(ctx: &CheckContext, b: &Bipartition, p: u32) -> Result<CheckReport> {
    let t = Instant::now();
    let inputs = json!({ "b": b, "p": p });
    let np = normal_pair(b, field(p)?);
    let found = match find_decomposition(&np.pair, ctx.budget) {
        Err(Error::BudgetExceeded(budget)) => return Ok(CheckReport::budget(CheckKind::Distinguished, inputs, budget, t)),
        other => other?,
    };
    let distinguished = is_distinguished(b);
    let mut pass = found.is_some() != distinguished;
    let mut witness = json!({
        "distinguished": distinguished,
        "search_found": found.as_ref().map(|d| json!({ "v1_dim": d.v1.dim(), "v2_dim": d.v2.dim() })),
    });
    if !distinguished {
        let (d, construction) = explicit_decomposition(&np)?;
        let violations = d.violations(&np.pair)?;
        pass &= violations.is_empty();
        witness["construction"] = json!(construction);
        witness["explicit"] = json!({ "v1_dim": d.v1.dim(), "v2_dim": d.v2.dim(), "violations": violations });
    }
    Ok(CheckReport::new(CheckKind::Distinguished, inputs, pass, witness, t))
}

fn dedup_dims(seq: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(seq.len());
    for &a in seq {
        if out.last() != Some(&a) {
            out.push(a);
        }
    }
    out
}

/// All splittings `r_i = a_i + b_i` with both sequences nondecreasing from 0 to `(d1, d2)`.
fn split_profiles(dims: &[usize], d1: usize, d2: usize) -> Vec<Vec<usize>> {
    fn rec(dims: &[usize], d1: usize, d2: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let i = acc.len();
        if i == dims.len() {
            if acc.last() == Some(&d1) {
                out.push(acc.clone());
            }
            return;
        }
        let (pa, pb) = if i == 0 { (0, 0) } else { (acc[i - 1], dims[i - 1] - acc[i - 1]) };
        for a in pa..=d1.min(dims[i]) {
            let b = dims[i] - a;
            if b < pb || b > d2 {
                continue;
            }
            acc.push(a);
            rec(dims, d1, d2, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(dims, d1, d2, &mut Vec::new(), &mut out);
    out
}

/// For a non-distinguished `b` and its explicit splitting, the flags fixed by
/// both tori with a given intersection profile `dim(W_i ∩ V1)` are counted
/// directly and compared with the product of the two smaller fixed-point counts.
pub fn check_split_product(b: &Bipartition, big: &Bipartition, p: u32) -> Result<CheckReport> {
    let t = Instant::now();
    let inputs = json!({ "b": b, "big": big, "p": p });
    if is_distinguished(b) {
        return Err(Error::Precondition(format!("{b} is distinguished")));
    }
    let np = normal_pair(b, field(p)?);
    let shape = flag_shape(big);
    if shape.n() != np.n() {
        return Err(Error::DimensionMismatch { expected: np.n(), found: shape.n() });
    }
    let (d, _) = explicit_decomposition(&np)?;
    let q = FiberQuery::normal(&np, shape.clone())?;
    let mut observed: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut fixed_total = 0u64;
    for flag in enumerate_lambda_fixed(&q)? {
        let mut profile = vec![0];
        let mut split = true;
        for s in &flag.steps {
            let a = s.intersect(&d.v1)?.dim();
            let c = s.intersect(&d.v2)?.dim();
            split &= a + c == s.dim();
            profile.push(a);
        }
        if split {
            fixed_total += 1;
            *observed.entry(profile).or_default() += 1;
        }
    }
    let pair1 = np.pair.restrict(&d.v1, np.v())?;
    let zero = vec![0; np.n()];
    let mut pair2 = np.pair.restrict(&d.v2, &zero)?;
    pair2.v = vec![0; pair2.n()];
    let dims = shape.dims();
    let mut rows = Vec::new();
    let mut pass = true;
    let mut product_total = 0u64;
    let mut zero_marker = false;
    for profile in split_profiles(dims, d.v1.dim(), d.v2.dim()) {
        let rho1 = dedup_dims(&profile);
        let seconds: Vec<usize> = dims.iter().zip(&profile).map(|(r, a)| r - a).collect();
        let rho2 = dedup_dims(&seconds);
        let a_j = profile[shape.j()];
        let j1 = rho1.iter().position(|&r| r == a_j).expect("a_j occurs in its own dedup");
        zero_marker |= j1 == 0 && shape.j() > 0;
        let c1 = count_lambda_fixed(&FiberQuery::graded(&pair1, FlagShape::new(rho1.clone(), j1)?)?)?;
        let c2 = count_lambda_fixed(&FiberQuery::graded(&pair2, FlagShape::new(rho2.clone(), 0)?)?)?;
        let lhs = observed.get(&profile).copied().unwrap_or(0);
        let ok = lhs == c1 * c2;
        pass &= ok;
        product_total += c1 * c2;
        if lhs > 0 || c1 * c2 > 0 || !ok {
            rows.push(json!({ "profile": profile, "rho1": rho1, "j1": j1, "rho2": rho2, "lhs": lhs, "rhs": [c1, c2], "ok": ok }));
        }
    }
    pass &= product_total == fixed_total;
    let witness = json!({
        "v1_dim": d.v1.dim(),
        "v2_dim": d.v2.dim(),
        "fixed_total": fixed_total,
        "product_total": product_total,
        "profiles": rows,
    });
    let mut report = CheckReport::new(CheckKind::SplitProduct, inputs, pass, witness, t);
    if zero_marker {
        report.notes.push("marker j' = 0 used where W_j meets V1 trivially".to_string());
    }
    Ok(report)
}

/// For distinguished `b` with nonempty `alpha`: kernel weight lines have
/// multiplicity one and the fixed-point count decomposes over choices of `W_1`
/// among sums of those lines, each contributing the count on the quotient.
pub fn check_kernel_recursion(b: &Bipartition, shape: &FlagShape, p: u32) -> Result<CheckReport> {
    let t = Instant::now();
    let inputs = json!({ "b": b, "shape": shape, "p": p });
    if !is_distinguished(b) || b.mu.is_empty() {
        return Err(Error::Precondition(format!("{b} is not a distinguished pair with nonempty alpha")));
    }
    let np = normal_pair(b, field(p)?);
    let g = &np.pair;
    let ker = np.x().kernel();
    let mut lines = Vec::new();
    let mut multiplicity_ok = true;
    for w in g.distinct_weights() {
        let piece = ker.intersect(&g.weight_space(w))?;
        multiplicity_ok &= piece.dim() <= 1;
        if piece.dim() == 1 {
            lines.push((w, piece));
        }
    }
    multiplicity_ok &= lines.iter().map(|(_, l)| l.dim()).sum::<usize>() == ker.dim();
    let lhs = count_lambda_fixed(&FiberQuery::normal(&np, shape.clone())?)?;
    let mut rhs = 0u64;
    let mut terms = Vec::new();
    let j = shape.j();
    let v_is_zero = np.v().iter().all(|&a| a == 0);
    if !shape.is_empty() && (j > 0 || v_is_zero) {
        let r1 = shape.dims()[1];
        let reduced = shape.reduced();
        for subset in subsets(lines.len(), r1) {
            let mut w = Subspace::zero(np.field(), np.n());
            for &k in &subset {
                w = w.sum(&lines[k].1)?;
            }
            let quotient = g.quotient(&w)?;
            let c = count_lambda_fixed(&FiberQuery::graded(&quotient, reduced.clone())?)?;
            rhs += c;
            terms.push(json!({ "weights": subset.iter().map(|&k| lines[k].0).collect::<Vec<_>>(), "count": c }));
        }
    }
    let witness = json!({
        "kernel_weights": lines.iter().map(|(w, _)| *w).collect::<Vec<_>>(),
        "lhs": lhs,
        "rhs": rhs,
        "terms": terms,
    });
    Ok(CheckReport::new(CheckKind::KernelRecursion, inputs, multiplicity_ok && lhs == rhs, witness, t))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for i in start..n {
            acc.push(i);
            rec(i + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Over the regular nilpotent with `v = 0`, every torus-fixed fiber has at most one point.
pub fn check_regular_fixed(n: usize, p: u32) -> Result<CheckReport> {
    let t = Instant::now();
    let b = Bipartition::from_parts(&[], &if n == 0 { vec![] } else { vec![n] });
    let np = normal_pair(&b, field(p)?);
    let mut counts = Vec::new();
    let mut pass = true;
    for shape in FlagShape::all(n) {
        let c = count_lambda_fixed(&FiberQuery::normal(&np, shape.clone())?)?;
        pass &= c <= 1;
        counts.push(json!({ "shape": shape.to_string(), "count": c }));
    }
    Ok(CheckReport::new(CheckKind::RegularFixed, json!({ "n": n, "p": p }), pass, json!({ "counts": counts }), t))
}

/// `2 deg(fiber polynomial) <= dim O_big - dim O_small` over every orbit in the closure.
pub fn check_semismall(ctx: &CheckContext, big: &Bipartition) -> Result<CheckReport> {
    let t = Instant::now();
    let dim_big = orbit_dimension(big)?;
    let mut rows = Vec::new();
    let mut pass = true;
    for small in bipartitions(big.n()) {
        if !ctx.counter.closure_contains(big, &small, 2)? {
            continue;
        }
        let fp = fiber_polynomial(&ctx.counter, big, &small, &ctx.schedule)?;
        let dim_small = orbit_dimension(&small)?;
        let (ok, degree) = match &fp.polynomial {
            Ok(poly) => {
                let deg = poly.degree().unwrap_or(0);
                (fp.holdout_matches() && dim_small <= dim_big && 2 * deg <= dim_big - dim_small, Some(deg))
            }
            Err(_) => (false, None),
        };
        pass &= ok;
        rows.push(json!({ "small": small, "degree": degree, "dim_small": dim_small, "ok": ok }));
    }
    Ok(CheckReport::new(CheckKind::Semismall, json!({ "big": big }), pass, json!({ "dim_big": dim_big, "strata": rows }), t))
}

/// The fiber and its torus-fixed locus have the same number of cells.
pub fn check_euler_bridge(ctx: &CheckContext, big: &Bipartition, small: &Bipartition) -> Result<CheckReport> {
    let t = Instant::now();
    let total = fiber_polynomial(&ctx.counter, big, small, &ctx.schedule)?;
    let fixed = lambda_fixed_polynomial(big, small, &ctx.schedule)?;
    let sums = match (&total.polynomial, &fixed.polynomial) {
        (Ok(a), Ok(b)) => Some((a.coefficient_sum(), b.coefficient_sum())),
        _ => None,
    };
    let pass = total.is_certificate() && fixed.is_certificate() && matches!(sums, Some((a, b)) if a == b);
    let witness = json!({
        "fiber": serde_json::to_value(&total).expect("serializable"),
        "fixed": serde_json::to_value(&fixed).expect("serializable"),
        "cell_counts": sums,
    });
    Ok(CheckReport::new(CheckKind::EulerBridge, pair_inputs(big, small), pass, witness, t))
}

pub const DENSE_ORBIT_PRIME: u32 = 101;

/// Tangent map of the parabolic action at `(v, x)` reaches all of `V^{>=0} x u_P`.
pub fn check_dense_orbit(b: &Bipartition) -> Result<CheckReport> {
    let t = Instant::now();
    let np = normal_pair(b, field(DENSE_ORBIT_PRIME)?);
    let (rank, expected) = dense_orbit_tangent(&np)?;
    let witness = json!({ "rank": rank, "expected": expected });
    Ok(CheckReport::new(CheckKind::DenseOrbit, json!({ "b": b, "p": DENSE_ORBIT_PRIME }), rank == expected, witness, t))
}

/// Pairs `(big, small)` of bipartitions of `n` with `small` in the closure of `big`.
pub fn closure_pairs(ctx: &CheckContext, n: usize) -> Result<Vec<(Bipartition, Bipartition)>> {
    let all = bipartitions(n);
    let candidates: Vec<(Bipartition, Bipartition)> =
        all.iter().flat_map(|b| all.iter().map(move |s| (b.clone(), s.clone()))).collect();
    let flags = candidates
        .par_iter()
        .map(|(b, s)| ctx.counter.closure_contains(b, s, 2))
        .collect::<Result<Vec<bool>>>()?;
    Ok(candidates.into_iter().zip(flags).filter(|(_, keep)| *keep).map(|(c, _)| c).collect())
}

/// Primes used by the small-prime checks of the suite.
pub const SUITE_SMALL_PRIMES: [u32; 2] = [2, 3];

#[derive(Clone, Debug)]
enum Task {
    Roundtrip(Bipartition, u32),
    Birational(Bipartition, u32),
    Polynomial(Bipartition, Bipartition),
    Alpha(Bipartition, Bipartition),
    Distinguished(Bipartition),
    Split(Bipartition, Bipartition, u32),
    Kernel(Bipartition, FlagShape, u32),
    Regular(usize, u32),
    Semismall(Bipartition),
    Euler(Bipartition, Bipartition),
    Dense(Bipartition),
}

/// Runs the selected checks over every bipartition (and closure pair) of each
/// size `0..=max_n`. Reports come back in a fixed order regardless of threading.
pub fn run_suite(ctx: &CheckContext, max_n: usize, selection: &[CheckKind]) -> Result<Vec<CheckReport>> {
    let want = |k: CheckKind| selection.contains(&k);
    let mut tasks = Vec::new();
    for n in 0..=max_n {
        let all = bipartitions(n);
        let pairs = if [CheckKind::Polynomial, CheckKind::AlphaPartition, CheckKind::SplitProduct, CheckKind::EulerBridge]
            .into_iter()
            .any(want)
        {
            closure_pairs(ctx, n)?
        } else {
            Vec::new()
        };
        for kind in CheckKind::ALL.into_iter().filter(|k| want(*k)) {
            match kind {
                CheckKind::Roundtrip => {
                    for b in &all {
                        for p in SUITE_SMALL_PRIMES {
                            tasks.push(Task::Roundtrip(b.clone(), p));
                        }
                    }
                }
                CheckKind::Birational => {
                    for b in &all {
                        for p in SUITE_SMALL_PRIMES {
                            tasks.push(Task::Birational(b.clone(), p));
                        }
                    }
                }
                CheckKind::Polynomial => tasks.extend(pairs.iter().map(|(b, s)| Task::Polynomial(b.clone(), s.clone()))),
                CheckKind::AlphaPartition => tasks.extend(pairs.iter().map(|(b, s)| Task::Alpha(b.clone(), s.clone()))),
                CheckKind::Distinguished => tasks.extend(all.iter().map(|b| Task::Distinguished(b.clone()))),
                CheckKind::SplitProduct => {
                    for (big, small) in pairs.iter().filter(|(_, s)| !is_distinguished(s)) {
                        for p in SUITE_SMALL_PRIMES {
                            tasks.push(Task::Split(small.clone(), big.clone(), p));
                        }
                    }
                }
                CheckKind::KernelRecursion => {
                    for b in all.iter().filter(|b| is_distinguished(b) && !b.mu.is_empty()) {
                        for shape in FlagShape::all(n) {
                            for p in SUITE_SMALL_PRIMES {
                                tasks.push(Task::Kernel(b.clone(), shape.clone(), p));
                            }
                        }
                    }
                }
                CheckKind::RegularFixed => {
                    for p in SUITE_SMALL_PRIMES {
                        tasks.push(Task::Regular(n, p));
                    }
                }
                CheckKind::Semismall => tasks.extend(all.iter().map(|b| Task::Semismall(b.clone()))),
                CheckKind::EulerBridge => tasks.extend(pairs.iter().map(|(b, s)| Task::Euler(b.clone(), s.clone()))),
                CheckKind::DenseOrbit => tasks.extend(all.iter().map(|b| Task::Dense(b.clone()))),
            }
        }
    }
    tasks
        .par_iter()
        .map(|task| match task {
            Task::Roundtrip(b, p) => check_roundtrip(b, *p),
            Task::Birational(b, p) => check_birational(ctx, b, *p),
            Task::Polynomial(b, s) => check_polynomial_count(ctx, b, s),
            Task::Alpha(b, s) => check_alpha_partition(ctx, b, s),
            Task::Distinguished(b) => check_distinguished_lemma(ctx, b, 2),
            Task::Split(b, big, p) => check_split_product(b, big, *p),
            Task::Kernel(b, shape, p) => check_kernel_recursion(b, shape, *p),
            Task::Regular(n, p) => check_regular_fixed(*n, *p),
            Task::Semismall(b) => check_semismall(ctx, b),
            Task::Euler(b, s) => check_euler_bridge(ctx, b, s),
            Task::Dense(b) => check_dense_orbit(b),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(mu: &[usize], nu: &[usize]) -> Bipartition {
        Bipartition::from_parts(mu, nu)
    }

    #[test]
    fn polynomial_examples() {
        let ctx = CheckContext::default();
        let r = check_polynomial_count(&ctx, &bp(&[], &[2]), &bp(&[], &[1, 1])).unwrap();
        assert!(r.passed());
        assert_eq!(r.witness["polynomial"], json!([1, 1]));
        let r = check_polynomial_count(&ctx, &bp(&[], &[3]), &bp(&[], &[1, 1, 1])).unwrap();
        assert_eq!(r.witness["polynomial"], json!([1, 2, 2, 1]));
        assert!(r.passed());
        assert!(matches!(
            check_polynomial_count(&ctx, &bp(&[], &[2]), &bp(&[1], &[1])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn alpha_partition_on_projective_line() {
        let ctx = CheckContext::default();
        let r = check_alpha_partition(&ctx, &bp(&[], &[2]), &bp(&[], &[1, 1])).unwrap();
        assert!(r.passed(), "{r:?}");
        // all weights are -1, so the parabolic is everything and the line is one piece
        assert_eq!(r.witness["sums"]["2"]["pieces"], json!(1));
        assert_eq!(r.witness["sums"]["2"]["total"], json!(3));
        assert_eq!(r.witness["pieces"][0]["polynomial"], json!("q+1"));
    }

    #[test]
    fn alpha_partition_budget_is_reported() {
        let ctx = CheckContext::new(PrimeSchedule::default(), 5);
        let r = check_alpha_partition(&ctx, &bp(&[], &[3]), &bp(&[], &[1, 1, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::BudgetExceeded);
    }

    #[test]
    fn distinguished_examples() {
        let ctx = CheckContext::default();
        let r = check_distinguished_lemma(&ctx, &bp(&[], &[3]), 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.witness["search_found"], Value::Null);
        let r = check_distinguished_lemma(&ctx, &bp(&[2, 2], &[1]), 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.witness["construction"], json!({ "kind": "equal_alpha", "l": 1 }));
        let tight = CheckContext::new(PrimeSchedule::default(), 1);
        let r = check_distinguished_lemma(&tight, &bp(&[2, 2], &[1]), 2).unwrap();
        assert_eq!(r.verdict, Verdict::BudgetExceeded);
    }

    #[test]
    fn split_product_example() {
        let r = check_split_product(&bp(&[1, 1], &[]), &bp(&[1, 1], &[]), 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(check_split_product(&bp(&[], &[2]), &bp(&[], &[2]), 2).is_err());
    }

    #[test]
    fn split_profiles_enumeration() {
        // dims (0,1,2), V1 and V2 both lines: a = (0,0,1) or (0,1,1)
        assert_eq!(split_profiles(&[0, 1, 2], 1, 1), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        assert_eq!(dedup_dims(&[0, 0, 1, 1, 2]), vec![0, 1, 2]);
    }

    #[test]
    fn kernel_recursion_examples() {
        let b = bp(&[2], &[1]);
        let r = check_kernel_recursion(&b, &flag_shape(&b), 2).unwrap();
        assert!(r.passed(), "{r:?}");
        // r_1 = 2 exceeds the single kernel line
        let r = check_kernel_recursion(&b, &FlagShape::new(vec![0, 2, 3], 1).unwrap(), 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.witness["lhs"], json!(0));
        assert_eq!(r.witness["rhs"], json!(0));
        assert!(check_kernel_recursion(&bp(&[], &[3]), &FlagShape::full(3, 0).unwrap(), 2).is_err());
    }

    #[test]
    fn regular_fixed_points() {
        for n in 0..=4 {
            assert!(check_regular_fixed(n, 2).unwrap().passed());
        }
    }

    #[test]
    fn semismall_on_the_nilpotent_cone_of_gl2() {
        let ctx = CheckContext::default();
        let r = check_semismall(&ctx, &bp(&[], &[2])).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.witness["dim_big"], json!(2));
    }

    #[test]
    fn check_names_parse() {
        assert_eq!(parse_check_list("all").unwrap().len(), CheckKind::ALL.len());
        assert_eq!(parse_check_list("semismall,polynomial").unwrap(), vec![CheckKind::Polynomial, CheckKind::Semismall]);
        assert!(parse_check_list("nope").is_err());
    }
}

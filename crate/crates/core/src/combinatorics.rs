//! Partitions, bipartitions, back-to-back diagrams and flag shapes.
//!
//! Rows and boxes are 1-based throughout, matching the `v_{i,j}` labelling
//! of the normal basis: box `(i, j)` is the `j`-th box of row `i`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition stored as its positive parts in weakly decreasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

/// Largest partition size accepted; keeps `|mu| + |nu|` far from overflow.
pub const MAX_SIZE: usize = u32::MAX as usize;

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        let total = parts.iter().try_fold(0usize, |acc, &p| acc.checked_add(p));
        if total.is_none_or(|t| t > MAX_SIZE) {
            return Err(Error::InvalidPartition(format!("size exceeds {MAX_SIZE}")));
        }
        Ok(Partition(parts))
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part, 1-based, with zeros past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Largest part, 0 for the empty partition.
    pub fn first(&self) -> usize {
        self.part(1)
    }

    /// Parts padded with zeros to length `k` (no truncation).
    pub fn padded(&self, k: usize) -> Vec<usize> {
        let mut out = self.0.clone();
        if out.len() < k {
            out.resize(k, 0);
        }
        out
    }

    pub fn transpose(&self) -> Partition {
        transpose(self)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("bad part {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Conjugate partition: the `k`-th part counts parts `>= k`.
pub fn transpose(p: &Partition) -> Partition {
    let first = p.first();
    let parts = (1..=first).map(|k| p.0.iter().filter(|&&x| x >= k).count()).collect();
    Partition(parts)
}

/// All partitions of `n`, in lexicographic order of their part sequences.
pub fn partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            rec(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// An ordered pair `(mu; nu)` of partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bipartition {
    pub mu: Partition,
    pub nu: Partition,
}

impl Bipartition {
    pub fn new(mu: Partition, nu: Partition) -> Self {
        Bipartition { mu, nu }
    }

    /// Convenience constructor from raw parts; panics on invalid input.
    pub fn from_parts(mu: &[usize], nu: &[usize]) -> Self {
        Bipartition {
            mu: Partition::new(mu.to_vec()).expect("invalid mu"),
            nu: Partition::new(nu.to_vec()).expect("invalid nu"),
        }
    }

    pub fn n(&self) -> usize {
        self.mu.size() + self.nu.size()
    }

    /// Number of rows of the back-to-back diagram.
    pub fn rows(&self) -> usize {
        self.mu.len().max(self.nu.len())
    }

    /// Length of row `i` (1-based).
    pub fn row_len(&self, i: usize) -> usize {
        self.mu.part(i) + self.nu.part(i)
    }
}

impl PartialOrd for Bipartition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(|mu|, mu, nu)`.
impl Ord for Bipartition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.mu.size(), &self.mu, &self.nu).cmp(&(other.mu.size(), &other.mu, &other.nu))
    }
}

impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "mu={};nu={}", self.mu, self.nu)
    }
}

/// Parses `mu=3,1,1;nu=3,2`. Either side may be empty (`mu=;nu=2`).
impl FromStr for Bipartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (left, right) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `mu=..;nu=..`, got {s:?}")))?;
        let mu = left
            .trim()
            .strip_prefix("mu=")
            .ok_or_else(|| Error::Parse(format!("missing `mu=` in {s:?}")))?;
        let nu = right
            .trim()
            .strip_prefix("nu=")
            .ok_or_else(|| Error::Parse(format!("missing `nu=` in {s:?}")))?;
        Ok(Bipartition { mu: mu.parse()?, nu: nu.parse()? })
    }
}

/// Every bipartition of `n` exactly once, ordered by `(|mu|, mu, nu)`.
pub fn bipartitions(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for k in 0..=n {
        let nus = partitions(n - k);
        for mu in partitions(k) {
            for nu in &nus {
                out.push(Bipartition::new(mu.clone(), nu.clone()));
            }
        }
    }
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramRow {
    pub row: usize,
    pub first_col: usize,
    pub last_col: usize,
}

/// Back-to-back union diagram: `mu` right-justified against column `mu_1`,
/// `nu` left-justified from column `mu_1 + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagram {
    pub rows: Vec<DiagramRow>,
    pub column_heights: Vec<usize>,
    /// `(row, column)` coordinates, both 1-based.
    pub boxes: BTreeSet<(usize, usize)>,
}

impl Diagram {
    pub fn total_boxes(&self) -> usize {
        self.boxes.len()
    }
}

pub fn diagram(b: &Bipartition) -> Diagram {
    let m1 = b.mu.first();
    let mut rows = Vec::new();
    let mut boxes = BTreeSet::new();
    for i in 1..=b.rows() {
        let first_col = m1 - b.mu.part(i) + 1;
        let last_col = m1 + b.nu.part(i);
        for c in first_col..=last_col {
            boxes.insert((i, c));
        }
        rows.push(DiagramRow { row: i, first_col, last_col });
    }
    let ncols = m1 + b.nu.first();
    let mut column_heights = vec![0; ncols];
    for &(_, c) in &boxes {
        column_heights[c - 1] += 1;
    }
    Diagram { rows, column_heights, boxes }
}

/// Dimension sequence `0 = r_0 < ... < r_m = n` with the marker `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlagShape {
    dims: Vec<usize>,
    j: usize,
}

impl FlagShape {
    pub fn new(dims: Vec<usize>, j: usize) -> Result<Self> {
        if dims.first() != Some(&0) {
            return Err(Error::InvalidShape(format!("{dims:?} must start at 0")));
        }
        if dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidShape(format!("{dims:?} is not strictly increasing")));
        }
        if j > dims.len() - 1 {
            return Err(Error::InvalidShape(format!("marker {j} exceeds length {}", dims.len() - 1)));
        }
        Ok(FlagShape { dims, j })
    }

    /// Shape with consecutive steps `steps`, e.g. `[1, 1, 1]` is the full flag in dimension 3.
    pub fn from_steps(steps: &[usize], j: usize) -> Result<Self> {
        let mut dims = vec![0];
        let mut acc = 0;
        for &s in steps {
            acc += s;
            dims.push(acc);
        }
        FlagShape::new(dims, j)
    }

    pub fn full(n: usize, j: usize) -> Result<Self> {
        FlagShape::new((0..=n).collect(), j)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n(&self) -> usize {
        *self.dims.last().unwrap()
    }

    pub fn steps(&self) -> Vec<usize> {
        self.dims.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Drops `W_1` and shifts down: `(r_2 - r_1, ..., r_m - r_1)` with marker `j - 1` (or 0).
    pub fn reduced(&self) -> FlagShape {
        let r1 = self.dims[1];
        let dims = self.dims[1..].iter().map(|d| d - r1).collect();
        FlagShape { dims, j: self.j.saturating_sub(1) }
    }

    /// All shapes of ambient dimension `n` with every marker position.
    pub fn all(n: usize) -> Vec<FlagShape> {
        fn compositions(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for first in 1..=n {
                for mut rest in compositions(n - first) {
                    rest.insert(0, first);
                    out.push(rest);
                }
            }
            out
        }
        let mut out = Vec::new();
        for steps in compositions(n) {
            for j in 0..=steps.len() {
                out.push(FlagShape::from_steps(&steps, j).unwrap());
            }
        }
        out
    }
}

impl fmt::Display for FlagShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({});j={}", s.join(","), self.j)
    }
}

/// Cumulative column heights of the diagram, with marker `mu_1`.
pub fn flag_shape(b: &Bipartition) -> FlagShape {
    let d = diagram(b);
    let mut dims = vec![0];
    let mut acc = 0;
    for h in d.column_heights {
        acc += h;
        dims.push(acc);
    }
    FlagShape { dims, j: b.mu.first() }
}

/// Whether `(alpha; beta)` is `(∅; (n))` or has strictly decreasing `alpha`
/// together with strictly decreasing `beta` once padded to `l(alpha)` entries.
pub fn is_distinguished(b: &Bipartition) -> bool {
    let (alpha, beta) = (&b.mu, &b.nu);
    if alpha.is_empty() && beta.len() == 1 {
        return true;
    }
    let k = alpha.len();
    if beta.len() > k {
        return false;
    }
    let strict = |s: &[usize]| s.windows(2).all(|w| w[0] > w[1]);
    strict(alpha.parts()) && strict(&beta.padded(k))
}

/// Grading `alpha_i - j` of the basis vector at box `(i, j)`.
pub fn box_weight(b: &Bipartition, i: usize, j: usize) -> Result<i64> {
    if i == 0 || j == 0 || i > b.rows() || j > b.row_len(i) {
        return Err(Error::OutOfDiagram { row: i, col: j });
    }
    Ok(b.mu.part(i) as i64 - j as i64)
}

//! Fiber counts against a brute-force oracle that treats subspaces as plain
//! sets of vectors, plus invariance under change of basis.

use std::collections::{BTreeSet, HashMap, HashSet};

use nilcone::combinatorics::{bipartitions, FlagShape};
use nilcone::fiber::{count_fiber, count_lambda_fixed, enumerate_fiber, enumerate_lambda_fixed};
use nilcone::normal_form::{classify_pair, normal_pair};
use nilcone::gf::Flag;
use nilcone::{FiberCounter, FiberQuery, Matrix, PrimeField};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Space {
    p: u32,
    n: usize,
}

impl Space {
    fn size(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    fn decode(&self, mut k: usize) -> Vec<u32> {
        (0..self.n)
            .map(|_| {
                let d = (k % self.p as usize) as u32;
                k /= self.p as usize;
                d
            })
            .collect()
    }

    fn encode(&self, v: &[u32]) -> usize {
        v.iter().rev().fold(0, |acc, &d| acc * self.p as usize + d as usize)
    }

    fn add_scaled(&self, a: usize, b: usize, c: u32) -> usize {
        let (a, b) = (self.decode(a), self.decode(b));
        let s: Vec<u32> = a.iter().zip(&b).map(|(x, y)| (x + c * y) % self.p).collect();
        self.encode(&s)
    }

    fn apply(&self, rows: &[Vec<u32>], k: usize) -> usize {
        let v = self.decode(k);
        let w: Vec<u32> =
            rows.iter().map(|r| (r.iter().zip(&v).map(|(a, b)| (a * b) as u64).sum::<u64>() % self.p as u64) as u32).collect();
        self.encode(&w)
    }

    /// Every subspace as a set of vector indices, keyed by its size.
    fn all_subspaces(&self) -> Vec<BTreeSet<usize>> {
        let zero: BTreeSet<usize> = [0].into_iter().collect();
        let mut seen: BTreeSet<BTreeSet<usize>> = [zero.clone()].into_iter().collect();
        let mut frontier = vec![zero];
        while let Some(s) = frontier.pop() {
            for u in 0..self.size() {
                if s.contains(&u) {
                    continue;
                }
                let mut t = s.clone();
                for &w in &s {
                    for c in 1..self.p {
                        t.insert(self.add_scaled(w, u, c));
                    }
                }
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }
}

fn brute_force(space: &Space, subspaces: &[BTreeSet<usize>], x: &[Vec<u32>], v: usize, shape: &FlagShape) -> u64 {
    let by_dim: HashMap<usize, Vec<&BTreeSet<usize>>> = subspaces.iter().fold(HashMap::new(), |mut m, s| {
        let d = (s.len() as f64).log(space.p as f64).round() as usize;
        m.entry(d).or_default().push(s);
        m
    });
    fn rec(
        space: &Space,
        by_dim: &HashMap<usize, Vec<&BTreeSet<usize>>>,
        x: &[Vec<u32>],
        v: usize,
        shape: &FlagShape,
        i: usize,
        prev: &BTreeSet<usize>,
    ) -> u64 {
        if i > shape.len() {
            return 1;
        }
        let mut total = 0;
        for w in by_dim.get(&shape.dims()[i]).into_iter().flatten() {
            let nested = prev.is_subset(w);
            let stable = w.iter().all(|&u| prev.contains(&space.apply(x, u)));
            let marked = i != shape.j() || w.contains(&v);
            if nested && stable && marked {
                total += rec(space, by_dim, x, v, shape, i + 1, w);
            }
        }
        total
    }
    if shape.j() == 0 && v != 0 {
        return 0;
    }
    let zero: BTreeSet<usize> = [0].into_iter().collect();
    rec(space, &by_dim, x, v, shape, 1, &zero)
}

fn paired_oracle(p: u32, max_n: usize) {
    let field = PrimeField::new(p).unwrap();
    let counter = FiberCounter::new();
    for n in 0..=max_n {
        let space = Space { p, n };
        let subspaces = space.all_subspaces();
        for b in bipartitions(n) {
            let np = normal_pair(&b, field);
            let rows = np.x().to_rows();
            let v = space.encode(np.v());
            for shape in FlagShape::all(n) {
                let q = FiberQuery::normal(&np, shape.clone()).unwrap();
                let expected = brute_force(&space, &subspaces, &rows, v, &shape);
                assert_eq!(count_fiber(&q).unwrap(), expected, "{b} {shape} p={p}");
                assert_eq!(counter.count(&q).unwrap(), expected, "memo {b} {shape} p={p}");
                let flags = enumerate_fiber(&q).unwrap();
                assert_eq!(flags.len() as u64, expected, "walk {b} {shape} p={p}");
                assert!(flags.iter().all(|f| f.is_nested() && f.dims() == shape.dims()));
            }
        }
    }
}

#[test]
fn fiber_counts_match_set_oracle_over_gf2() {
    paired_oracle(2, 4);
}

#[test]
fn fiber_counts_match_set_oracle_over_gf3() {
    paired_oracle(3, 3);
}

#[test]
fn lambda_fixed_flags_are_graded_fiber_flags() {
    let field = PrimeField::new(3).unwrap();
    for n in 1..=4 {
        for b in bipartitions(n) {
            let np = normal_pair(&b, field);
            for shape in FlagShape::all(n) {
                let q = FiberQuery::normal(&np, shape.clone()).unwrap();
                let fixed: HashSet<Flag> = enumerate_lambda_fixed(&q).unwrap().into_iter().collect();
                assert_eq!(fixed.len() as u64, count_lambda_fixed(&q).unwrap());
                let graded: HashSet<Flag> = enumerate_fiber(&q)
                    .unwrap()
                    .into_iter()
                    .filter(|f| f.steps.iter().all(|s| np.pair.is_graded(s).unwrap()))
                    .collect();
                assert_eq!(fixed, graded, "{b} {shape}");
            }
        }
    }
}

/// Random invertible `g` as a product of elementary matrices, with its inverse.
fn random_gl(field: PrimeField, n: usize, rng: &mut StdRng) -> (Matrix, Matrix) {
    let mut g = Matrix::identity(field, n);
    let mut g_inv = Matrix::identity(field, n);
    let p = field.p();
    for _ in 0..3 * n {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut e = Matrix::identity(field, n);
        let mut e_inv = Matrix::identity(field, n);
        if a == b {
            let c = rng.gen_range(1..p);
            e.set(a, a, c);
            e_inv.set(a, a, field.inv(c));
        } else {
            let c = rng.gen_range(0..p);
            e.set(a, b, c);
            e_inv.set(a, b, field.neg(c));
        }
        g = e.mul(&g).unwrap();
        g_inv = g_inv.mul(&e_inv).unwrap();
    }
    (g, g_inv)
}

#[test]
fn counts_and_orbits_are_basis_independent() {
    let mut rng = StdRng::seed_from_u64(7);
    for p in [2, 3] {
        let field = PrimeField::new(p).unwrap();
        let counter = FiberCounter::new();
        for n in 1..=4 {
            for b in bipartitions(n) {
                let np = normal_pair(&b, field);
                let (g, g_inv) = random_gl(field, n, &mut rng);
                assert!(g.mul(&g_inv).unwrap() == Matrix::identity(field, n));
                let x = g.mul(np.x()).unwrap().mul(&g_inv).unwrap();
                let v = g.mul_vec(np.v()).unwrap();
                assert_eq!(classify_pair(&v, &x).unwrap(), b);
                for shape in FlagShape::all(n) {
                    let moved = FiberQuery::raw(v.clone(), x.clone(), shape.clone()).unwrap();
                    let normal = FiberQuery::normal(&np, shape.clone()).unwrap();
                    assert_eq!(count_fiber(&moved).unwrap(), counter.count(&normal).unwrap(), "{b} {shape}");
                }
            }
        }
    }
}

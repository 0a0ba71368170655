//! Integer polynomials in `q` recovered exactly from point counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{first_primes, is_prime};

/// `c_0 + c_1 q + ... + c_d q^d` with no trailing zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPolynomial {
    coeffs: Vec<i64>,
}

impl QPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        QPolynomial::default()
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Value at `q = 1`; for a paved variety this is the number of cells.
    pub fn coefficient_sum(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn eval(&self, q: u64) -> i128 {
        self.coeffs.iter().rev().fold(0i128, |acc, &c| acc * q as i128 + c as i128)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.unsigned_abs();
            let mag = match (d, a) {
                (0, _) => a.to_string(),
                (_, 1) => String::new(),
                _ => a.to_string(),
            };
            let var = match d {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{d}"),
            };
            write!(f, "{sign}{mag}{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// The unique polynomial of degree `<= degree_bound` through all samples.
///
/// Solved exactly in rationals by Newton divided differences; every sample
/// is used, so extra samples act as consistency checks.
pub fn interpolate_qpoly(samples: &BTreeMap<u32, u64>, degree_bound: usize) -> Result<QPolynomial> {
    if samples.len() < degree_bound + 1 {
        return Err(Error::InsufficientSamples { needed: degree_bound + 1, got: samples.len() });
    }
    let xs: Vec<BigRational> = samples.keys().map(|&p| BigRational::from_integer(BigInt::from(p))).collect();
    let mut table: Vec<BigRational> = samples.values().map(|&c| BigRational::from_integer(BigInt::from(c))).collect();
    let n = xs.len();
    // table[i] becomes the divided difference f[x_0, ..., x_i]
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &xs[i] - &xs[i - level];
            table[i] = num / den;
        }
    }
    // expand Newton form into monomial coefficients, innermost first
    let mut poly: Vec<BigRational> = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // poly <- poly * (q - x_i) + table[i]
        let mut next = vec![BigRational::zero(); n];
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] += c;
            }
            next[d] -= c * &xs[i];
        }
        next[0] += &table[i];
        poly = next;
    }
    let mut coeffs = Vec::with_capacity(n);
    for (d, c) in poly.iter().enumerate() {
        if !c.denom().is_one() {
            return Err(Error::NonIntegral { degree: d, value: c.to_string() });
        }
        coeffs.push(c.numer().to_i64().ok_or(Error::Overflow)?);
    }
    let poly = QPolynomial::new(coeffs);
    if let Some(d) = poly.degree() {
        if d > degree_bound {
            return Err(Error::DegreeExceeded { degree: d, bound: degree_bound });
        }
    }
    Ok(poly)
}

/// Ordered primes used for sampling, plus an optional fixed held-out prime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSchedule {
    pub primes: Vec<u32>,
    pub holdout: Option<u32>,
}

impl Default for PrimeSchedule {
    fn default() -> Self {
        PrimeSchedule { primes: first_primes(16), holdout: None }
    }
}

impl PrimeSchedule {
    pub fn new(primes: Vec<u32>, holdout: Option<u32>) -> Result<Self> {
        for &p in primes.iter().chain(holdout.iter()) {
            if !is_prime(p as u64) {
                return Err(Error::NotPrime(p as u64));
            }
        }
        let mut sorted = primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != primes.len() {
            return Err(Error::Parse("duplicate primes in schedule".into()));
        }
        if let Some(h) = holdout {
            if primes.contains(&h) {
                return Err(Error::Parse(format!("held-out prime {h} is also in the schedule")));
            }
        }
        Ok(PrimeSchedule { primes, holdout })
    }

    /// Parses a comma-separated prime list.
    pub fn parse_primes(s: &str) -> Result<Vec<u32>> {
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("bad prime {t:?}: {e}"))))
            .collect()
    }

    /// The first `degree_bound + 1` primes and the held-out prime for that bound.
    pub fn for_degree(&self, degree_bound: usize) -> Result<(Vec<u32>, u32)> {
        let need = degree_bound + 1;
        let extra = usize::from(self.holdout.is_none());
        if self.primes.len() < need + extra {
            return Err(Error::InsufficientSamples { needed: need + extra, got: self.primes.len() });
        }
        let sample = self.primes[..need].to_vec();
        let holdout = self.holdout.unwrap_or_else(|| self.primes[need]);
        Ok((sample, holdout))
    }
}

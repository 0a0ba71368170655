//! Exact linear algebra over prime fields.

mod enumerate;
mod field;
mod matrix;
mod subspace;

pub use enumerate::{enumerate_between, enumerate_subspaces, gaussian_binomial};
pub use field::{first_primes, is_prime, PrimeField, MAX_PRIME};
pub use matrix::Matrix;
pub use subspace::{QuotientMap, Subspace};

/// A partial flag `0 = W_0 ⊂ W_1 ⊂ ... ⊂ W_m = V`, stored without `W_0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    pub steps: Vec<Subspace>,
}

impl Flag {
    /// `W_i`; `W_0` is the zero subspace.
    pub fn get(&self, i: usize) -> Subspace {
        if i == 0 {
            let s = &self.steps[0];
            return Subspace::zero(s.field(), s.ambient_dim());
        }
        self.steps[i - 1].clone()
    }

    pub fn dims(&self) -> Vec<usize> {
        std::iter::once(0).chain(self.steps.iter().map(|s| s.dim())).collect()
    }

    pub fn is_nested(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].is_subspace_of(&w[1]).unwrap_or(false))
    }
}

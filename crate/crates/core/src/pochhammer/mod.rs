//! Pochhammer symbols and their derivative kernels.
//!
//! With `(a)_m = a (a+1) ... (a+m-1)` the kernels are the `k!`-normalized
//! derivatives
//!
//! ```text
//! P[m][k](a)   = (1/k!) d^k/da^k (a)_m
//! Q[m][k](b)   = (1/k!) d^k/db^k 1/(b)_m
//! Qhat[m][k](b) = (1/k!) d^k/db^k (b+N)/(b)_m      (0 <= N < m)
//! ```
//!
//! The last one is the reciprocal symbol with its pole at `b = -N` removed.
//! Each kernel has an explicit closed form (in [`closed`]) and an
//! incremental recurrence in `m` (in [`rows`]); the engine uses the
//! recurrences, the closed forms are kept for cross-validation.

mod closed;
mod rows;
mod stirling;

use rug::Rational;

use crate::numerics::{ExactScalar, Number};

pub use closed::{p_deriv, q_deriv, q_hat_deriv};
pub use rows::{p_deriv_row, q_deriv_row, q_hat_row, PochhammerRows, ReciprocalRows};
pub use stirling::{stirling, StirlingTable};

/// Kernel values `values[k]` for `k = 0..=k_max` at fixed `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivRow<T> {
    pub m: usize,
    pub values: Vec<T>,
}

impl<T: Number> DerivRow<T> {
    /// The row `[1, 0, ..., 0]` shared by every kernel at `m = 0`.
    pub fn unit(m: usize, k_max: usize) -> Self {
        let mut values = vec![T::zero(); k_max + 1];
        values[0] = T::one();
        DerivRow { m, values }
    }

    pub fn k_max(&self) -> usize {
        self.values.len() - 1
    }
}

/// Rising factorial `(alpha)_m`; `(alpha)_0 = 1`.
pub fn pochhammer<T: Number>(alpha: &T, m: usize) -> T {
    (0..m).fold(T::one(), |acc, l| acc * (alpha.clone() + T::from_usize(l)))
}

/// Harmonic number `H_m`, with `H_0 = 0`.
pub fn harmonic(m: usize) -> ExactScalar {
    ExactScalar((1..=m).fold(Rational::new(), |acc, l| acc + Rational::from((1, l as u64))))
}

//! Assembly of epsilon-expansion coefficients.
//!
//! For every summation index `m` each parameter contributes a vector of
//! slope-scaled kernel values (its Taylor coefficients in `eps`), the
//! vectors are multiplied as truncated power series, weighted by
//! `z^m / m!` and accumulated. Singular lower parameters `-N + b eps`
//! switch to the regularized reciprocal kernel once `m > N`, which shifts
//! the contribution down by one order of `eps` and divides it by `b`.

mod adaptive;
mod appell;
mod classify;
mod combine;
mod pfq;

use crate::numerics::Number;
use crate::{Error, Result};

pub use adaptive::run_adaptive;
pub use appell::{expand_appell_f4, Appell4Request};
pub use classify::{classify_lower, LowerClasses, LowerClassification};
pub use combine::{combine_factors, factor_vector, FactorRole};
pub use pfq::expand_pfq;

/// A parameter `constant + slope * eps`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearParam<T> {
    pub constant: T,
    pub slope: T,
}

impl<T: Number> LinearParam<T> {
    pub fn new(constant: T, slope: T) -> Self {
        LinearParam { constant, slope }
    }

    /// `constant` only, no dependence on `eps`.
    pub fn fixed(constant: T) -> Self {
        LinearParam {
            constant,
            slope: T::zero(),
        }
    }

    /// Value at a concrete `eps`.
    pub fn at(&self, eps: &T) -> T {
        self.constant.clone() + self.slope.clone() * eps
    }

    /// `K` when this is the `eps`-independent nonpositive integer `-K`.
    pub fn termination_index(&self) -> Option<usize> {
        if !self.slope.is_zero() {
            return None;
        }
        let k = self.constant.to_integer()?;
        if k <= 0 {
            (-k).to_usize()
        } else {
            None
        }
    }
}

/// How many terms of the hypergeometric sum to keep.
#[derive(Debug, Clone, PartialEq)]
pub enum TruncationPolicy {
    /// Sum `m = 0..=m`.
    Fixed { m: usize },
    /// Double `M` from `m_start` until every coefficient's relative change
    /// (absolute change for coefficients smaller than `tol`) drops below
    /// `tol`, failing past `m_cap`.
    Adaptive { m_start: usize, tol: f64, m_cap: usize },
}

impl TruncationPolicy {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TruncationPolicy::Fixed { m } if m < 1 => {
                Err(Error::InvalidRequest("truncation M must be at least 1".into()))
            }
            TruncationPolicy::Adaptive { m_start, tol, m_cap } => {
                if m_start < 8 {
                    Err(Error::InvalidRequest("adaptive M_start must be at least 8".into()))
                } else if m_cap < m_start {
                    Err(Error::InvalidRequest("adaptive M_cap must be >= M_start".into()))
                } else if tol.is_nan() || tol <= 0.0 {
                    Err(Error::InvalidRequest("adaptive tolerance must be positive".into()))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }
}

/// Full statement of a `pFq` expansion problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionRequest<T> {
    pub upper: Vec<LinearParam<T>>,
    pub lower: Vec<LinearParam<T>>,
    pub z: T,
    pub n_max: usize,
    pub truncation: TruncationPolicy,
    /// Working precision in bits for float backends.
    pub precision: u32,
}

impl<T: Number> ExpansionRequest<T> {
    pub fn new(upper: Vec<LinearParam<T>>, lower: Vec<LinearParam<T>>, z: T, n_max: usize, m: usize) -> Self {
        ExpansionRequest {
            upper,
            lower,
            z,
            n_max,
            truncation: TruncationPolicy::Fixed { m },
            precision: crate::numerics::DEFAULT_PRECISION,
        }
    }

    pub fn with_truncation(mut self, truncation: TruncationPolicy) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision = bits;
        self
    }

    /// Smallest termination index over all upper parameters.
    pub fn termination_index(&self) -> Option<usize> {
        let from_params = self.upper.iter().filter_map(|a| a.termination_index()).min();
        if self.z.is_zero() {
            Some(0)
        } else {
            from_params
        }
    }
}

/// Coefficients `C_n` for `n = min_order ..= max_order`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSeries<T> {
    pub min_order: i64,
    pub coeffs: Vec<T>,
}

impl<T: Number> LaurentSeries<T> {
    pub fn zeros(min_order: i64, max_order: i64) -> Self {
        LaurentSeries {
            min_order,
            coeffs: vec![T::zero(); (max_order - min_order + 1) as usize],
        }
    }

    pub fn max_order(&self) -> i64 {
        self.min_order + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, order: i64) -> Option<&T> {
        if order < self.min_order {
            return None;
        }
        self.coeffs.get((order - self.min_order) as usize)
    }

    /// `(order, coefficient)` pairs in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> {
        (self.min_order..).zip(self.coeffs.iter())
    }

    /// Evaluates the truncated series at a nonzero `eps`.
    pub fn eval(&self, eps: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * eps + c;
        }
        if self.min_order < 0 {
            acc / eps.powi(self.min_order.unsigned_abs() as usize)
        } else {
            acc * &eps.powi(self.min_order as usize)
        }
    }
}

/// Result of an expansion with bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion<T> {
    pub series: LaurentSeries<T>,
    /// Truncation index actually summed to.
    pub m_used: usize,
    /// Two or more singular lower parameters share a threshold `N`.
    pub coincident_thresholds: bool,
}

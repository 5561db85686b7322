//! Scalar backends.
//!
//! Every algorithm in the crate is written against the [`Number`] trait and
//! instantiated with one of:
//!
//! - [`ExactScalar`]: reduced big rationals, exact arithmetic;
//! - [`FloatScalar`]: MPFR binary floats with per-value precision;
//! - [`ComplexScalar`]: pairs of [`FloatScalar`] sharing one precision;
//! - `f64` / `f32`: hardware floats, handy for quick experiments.
//!
//! [`Scalar`] is the runtime-tagged union used at the user-facing layer
//! (literals, CLI, JSON). Mixing backends there is an error, never a
//! silent promotion.

mod complex;
mod decimal;
mod exact;
mod float;
mod literal;
mod machine;
mod scalar;

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rug::{Integer, Rational};

pub use complex::ComplexScalar;
pub use decimal::render_rational;
pub use exact::ExactScalar;
pub use float::{with_precision, working_precision, FloatScalar, DEFAULT_PRECISION, MIN_PRECISION};
pub use literal::{from_literal, parse_coefficient, Coefficient};
pub use scalar::{to_decimal_string, FromScalar, Scalar};

/// Backend discriminator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Exact,
    Float,
    Complex,
    /// Hardware `f32`/`f64`; not reachable from the CLI.
    Machine,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Exact => "exact",
            Backend::Float => "float",
            Backend::Complex => "complex",
            Backend::Machine => "machine",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            "complex" => Ok(Backend::Complex),
            _ => Err(crate::Error::parse(s, "backend must be exact, float or complex")),
        }
    }
}

/// Field-like scalar the kernels and the engine are generic over.
///
/// Integer and rational constructors on float types round to the
/// thread's [`working_precision`].
pub trait Number:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    const BACKEND: Backend;

    fn from_i64(n: i64) -> Self;

    fn from_integer(n: &Integer) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// The value as an exact integer, if it is one (and real).
    fn to_integer(&self) -> Option<Integer>;

    /// `|x|` rounded to `f64`.
    fn magnitude(&self) -> f64;

    /// Exact comparison of `|x|` with 1.
    fn cmp_abs_one(&self) -> Ordering;

    /// Real and imaginary parts as exact rationals. `None` for NaN or infinities.
    fn to_rational_parts(&self) -> Option<(Rational, Rational)>;

    fn from_usize(n: usize) -> Self {
        Self::from_i64(n as i64)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::from((num, den)))
    }

    fn powi(&self, n: usize) -> Self {
        num_traits::pow(self.clone(), n)
    }

    /// Significant-digit decimal rendering, round half to even on the exact
    /// value held by `self`. Complex values render as `"re + im i"`.
    fn to_decimal(&self, digits: usize) -> String {
        match self.to_rational_parts() {
            None => "NaN".to_string(),
            Some((re, im)) => {
                if Self::BACKEND == Backend::Complex {
                    let im_str = render_rational(&im, digits);
                    match im_str.strip_prefix('-') {
                        Some(abs) => format!("{} - {} i", render_rational(&re, digits), abs),
                        None => format!("{} + {} i", render_rational(&re, digits), im_str),
                    }
                } else {
                    render_rational(&re, digits)
                }
            }
        }
    }
}

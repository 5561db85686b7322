use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rug::{Float, Integer, Rational};

use super::{Backend, Number};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;
/// Smallest precision accepted for float scalars.
pub const MIN_PRECISION: u32 = 64;

thread_local! {
    static WORKING_PRECISION: Cell<u32> = const { Cell::new(DEFAULT_PRECISION) };
}

/// Precision used when a float is built from an integer or rational.
pub fn working_precision() -> u32 {
    WORKING_PRECISION.with(|p| p.get())
}

/// Runs `f` with the thread's working precision set to `bits` (clamped to
/// [`MIN_PRECISION`]), restoring the previous value afterwards.
pub fn with_precision<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    struct Restore(u32);
    impl Drop for Restore {
        fn drop(&mut self) {
            WORKING_PRECISION.with(|p| p.set(self.0));
        }
    }
    let _restore = Restore(working_precision());
    WORKING_PRECISION.with(|p| p.set(bits.max(MIN_PRECISION)));
    f()
}

/// Arbitrary-precision binary float. Binary operations round to the larger
/// of the two operand precisions.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct FloatScalar(pub Float);

impl FloatScalar {
    pub fn with_prec(prec: u32, value: f64) -> Self {
        FloatScalar(Float::with_val(prec.max(MIN_PRECISION), value))
    }

    pub fn from_rational_prec(q: &Rational, prec: u32) -> Self {
        FloatScalar(Float::with_val(prec.max(MIN_PRECISION), q))
    }

    pub fn pi(prec: u32) -> Self {
        FloatScalar(Float::with_val(
            prec.max(MIN_PRECISION),
            rug::float::Constant::Pi,
        ))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    pub fn abs(&self) -> Self {
        FloatScalar(self.0.clone().abs())
    }

    pub fn sqrt(&self) -> Self {
        FloatScalar(self.0.clone().sqrt())
    }

    pub fn ln(&self) -> Self {
        FloatScalar(self.0.clone().ln())
    }

    fn widened(mut self, prec: u32) -> Float {
        if self.0.prec() < prec {
            // exact: raising the precision never rounds
            self.0.set_prec(prec);
        }
        self.0
    }
}

impl fmt::Debug for FloatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (f64::from(self.0.prec()) * std::f64::consts::LOG10_2) as usize;
        write!(f, "{}", self.0.to_string_radix(10, Some(digits.max(1))))
    }
}

impl fmt::Display for FloatScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

macro_rules! float_binop {
    ($Tr:ident, $method:ident, $op:tt, $assign:tt) => {
        impl $Tr for FloatScalar {
            type Output = FloatScalar;
            fn $method(self, rhs: FloatScalar) -> FloatScalar {
                self $op &rhs
            }
        }

        impl<'a> $Tr<&'a FloatScalar> for FloatScalar {
            type Output = FloatScalar;
            fn $method(self, rhs: &'a FloatScalar) -> FloatScalar {
                let prec = self.0.prec().max(rhs.0.prec());
                let mut lhs = self.widened(prec);
                lhs $assign &rhs.0;
                FloatScalar(lhs)
            }
        }

        impl<'a, 'b> $Tr<&'b FloatScalar> for &'a FloatScalar {
            type Output = FloatScalar;
            fn $method(self, rhs: &'b FloatScalar) -> FloatScalar {
                let prec = self.0.prec().max(rhs.0.prec());
                FloatScalar(Float::with_val(prec, &self.0 $op &rhs.0))
            }
        }
    };
}

float_binop!(Add, add, +, +=);
float_binop!(Sub, sub, -, -=);
float_binop!(Mul, mul, *, *=);
float_binop!(Div, div, /, /=);

impl Neg for FloatScalar {
    type Output = FloatScalar;
    fn neg(self) -> FloatScalar {
        FloatScalar(-self.0)
    }
}

impl Neg for &FloatScalar {
    type Output = FloatScalar;
    fn neg(self) -> FloatScalar {
        FloatScalar(-self.0.clone())
    }
}

impl Zero for FloatScalar {
    fn zero() -> Self {
        FloatScalar(Float::new(working_precision()))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for FloatScalar {
    fn one() -> Self {
        FloatScalar(Float::with_val(working_precision(), 1))
    }
}

impl Number for FloatScalar {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(n: i64) -> Self {
        FloatScalar(Float::with_val(working_precision(), n))
    }

    fn from_integer(n: &Integer) -> Self {
        FloatScalar(Float::with_val(working_precision(), n))
    }

    fn from_rational(q: &Rational) -> Self {
        FloatScalar(Float::with_val(working_precision(), q))
    }

    fn to_integer(&self) -> Option<Integer> {
        if self.0.is_integer() {
            self.0.to_integer()
        } else {
            None
        }
    }

    fn magnitude(&self) -> f64 {
        self.0.to_f64().abs()
    }

    fn cmp_abs_one(&self) -> Ordering {
        self.0
            .cmp_abs(&Float::with_val(MIN_PRECISION, 1))
            .unwrap_or(Ordering::Greater)
    }

    fn to_rational_parts(&self) -> Option<(Rational, Rational)> {
        self.0.to_rational().map(|q| (q, Rational::new()))
    }
}

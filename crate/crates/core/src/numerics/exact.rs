use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rug::{Integer, Rational};

use super::{Backend, Number};

/// Exact rational. `rug::Rational` keeps it reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactScalar(pub Rational);

impl ExactScalar {
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Self {
        ExactScalar(Rational::from((num.into(), den.into())))
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        ExactScalar(q)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar(Rational::from(n))
    }
}

macro_rules! exact_binop {
    ($Tr:ident, $method:ident, $op:tt) => {
        impl $Tr for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                ExactScalar(self.0 $op rhs.0)
            }
        }

        impl<'a> $Tr<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'a ExactScalar) -> ExactScalar {
                ExactScalar(self.0 $op &rhs.0)
            }
        }

        impl<'a, 'b> $Tr<&'b ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &'b ExactScalar) -> ExactScalar {
                ExactScalar(Rational::from(&self.0 $op &rhs.0))
            }
        }
    };
}

exact_binop!(Add, add, +);
exact_binop!(Sub, sub, -);
exact_binop!(Mul, mul, *);
exact_binop!(Div, div, /);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(-self.0)
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar(Rational::from(-&self.0))
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar(Rational::new())
    }

    fn is_zero(&self) -> bool {
        self.0.cmp0() == Ordering::Equal
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        ExactScalar(Rational::from(1))
    }
}

impl Number for ExactScalar {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(n: i64) -> Self {
        ExactScalar(Rational::from(n))
    }

    fn from_integer(n: &Integer) -> Self {
        ExactScalar(Rational::from(n))
    }

    fn from_rational(q: &Rational) -> Self {
        ExactScalar(q.clone())
    }

    fn to_integer(&self) -> Option<Integer> {
        if *self.0.denom() == 1 {
            Some(self.0.numer().clone())
        } else {
            None
        }
    }

    fn magnitude(&self) -> f64 {
        self.0.to_f64().abs()
    }

    fn cmp_abs_one(&self) -> Ordering {
        self.0.numer().cmp_abs(self.0.denom())
    }

    fn to_rational_parts(&self) -> Option<(Rational, Rational)> {
        Some((self.0.clone(), Rational::new()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d)
    }

    #[test]
    fn rational_sum_reduces() {
        assert_eq!(q(1, 3) + q(1, 6), q(1, 2));
        assert_eq!(*(q(1, 3) + q(1, 6)).denom(), 2);
    }

    #[test]
    fn multiplicative_identity_and_power() {
        let x = q(-7, 5);
        assert_eq!(&x * &ExactScalar::one(), x);
        assert_eq!(q(1, 2).powi(3), q(1, 8));
    }

    #[test]
    fn integer_detection() {
        assert_eq!(q(-6, 3).to_integer(), Some(Integer::from(-2)));
        assert_eq!(q(1, 2).to_integer(), None);
        assert_eq!(q(-1, 2).cmp_abs_one(), Ordering::Less);
        assert_eq!(q(-1, 1).cmp_abs_one(), Ordering::Equal);
    }
}

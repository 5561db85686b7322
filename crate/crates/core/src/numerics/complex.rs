use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rug::{Integer, Rational};

use super::{Backend, FloatScalar, Number};

/// Complex number with arbitrary-precision float parts of equal precision.
#[derive(Clone, PartialEq)]
pub struct ComplexScalar {
    re: FloatScalar,
    im: FloatScalar,
}

impl ComplexScalar {
    pub fn new(re: FloatScalar, im: FloatScalar) -> Self {
        let prec = re.prec().max(im.prec());
        ComplexScalar {
            re: widen(re, prec),
            im: widen(im, prec),
        }
    }

    pub fn from_real(re: FloatScalar) -> Self {
        let prec = re.prec();
        ComplexScalar {
            re,
            im: FloatScalar::with_prec(prec, 0.0),
        }
    }

    pub fn re(&self) -> &FloatScalar {
        &self.re
    }

    pub fn im(&self) -> &FloatScalar {
        &self.im
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn norm_sqr(&self) -> FloatScalar {
        &self.re * &self.re + &(&self.im * &self.im)
    }
}

fn widen(x: FloatScalar, prec: u32) -> FloatScalar {
    if x.prec() >= prec {
        x
    } else {
        FloatScalar(rug::Float::with_val(prec, x.as_float()))
    }
}

impl fmt::Debug for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?} i)", self.re, self.im)
    }
}

fn add(a: &ComplexScalar, b: &ComplexScalar) -> ComplexScalar {
    ComplexScalar::new(&a.re + &b.re, &a.im + &b.im)
}

fn sub(a: &ComplexScalar, b: &ComplexScalar) -> ComplexScalar {
    ComplexScalar::new(&a.re - &b.re, &a.im - &b.im)
}

fn mul(a: &ComplexScalar, b: &ComplexScalar) -> ComplexScalar {
    let re = &a.re * &b.re - &(&a.im * &b.im);
    let im = &a.re * &b.im + &(&a.im * &b.re);
    ComplexScalar::new(re, im)
}

fn div(a: &ComplexScalar, b: &ComplexScalar) -> ComplexScalar {
    if b.im.is_zero() {
        return ComplexScalar::new(&a.re / &b.re, &a.im / &b.re);
    }
    let den = b.norm_sqr();
    let re = (&a.re * &b.re + &(&a.im * &b.im)) / &den;
    let im = (&a.im * &b.re - &(&a.re * &b.im)) / &den;
    ComplexScalar::new(re, im)
}

macro_rules! complex_binop {
    ($Tr:ident, $method:ident, $f:ident) => {
        impl $Tr for ComplexScalar {
            type Output = ComplexScalar;
            fn $method(self, rhs: ComplexScalar) -> ComplexScalar {
                $f(&self, &rhs)
            }
        }

        impl<'a> $Tr<&'a ComplexScalar> for ComplexScalar {
            type Output = ComplexScalar;
            fn $method(self, rhs: &'a ComplexScalar) -> ComplexScalar {
                $f(&self, rhs)
            }
        }

        impl<'a, 'b> $Tr<&'b ComplexScalar> for &'a ComplexScalar {
            type Output = ComplexScalar;
            fn $method(self, rhs: &'b ComplexScalar) -> ComplexScalar {
                $f(self, rhs)
            }
        }
    };
}

complex_binop!(Add, add, add);
complex_binop!(Sub, sub, sub);
complex_binop!(Mul, mul, mul);
complex_binop!(Div, div, div);

impl Neg for ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Zero for ComplexScalar {
    fn zero() -> Self {
        ComplexScalar::from_real(FloatScalar::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexScalar {
    fn one() -> Self {
        ComplexScalar::from_real(FloatScalar::one())
    }
}

impl Number for ComplexScalar {
    const BACKEND: Backend = Backend::Complex;

    fn from_i64(n: i64) -> Self {
        ComplexScalar::from_real(FloatScalar::from_i64(n))
    }

    fn from_integer(n: &Integer) -> Self {
        ComplexScalar::from_real(FloatScalar::from_integer(n))
    }

    fn from_rational(q: &Rational) -> Self {
        ComplexScalar::from_real(FloatScalar::from_rational(q))
    }

    fn to_integer(&self) -> Option<Integer> {
        if self.im.is_zero() {
            self.re.to_integer()
        } else {
            None
        }
    }

    fn magnitude(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    fn cmp_abs_one(&self) -> Ordering {
        match self.to_rational_parts() {
            Some((re, im)) => (re.square() + im.square()).cmp(&Rational::from(1)),
            None => Ordering::Greater,
        }
    }

    fn to_rational_parts(&self) -> Option<(Rational, Rational)> {
        Some((self.re.0.to_rational()?, self.im.0.to_rational()?))
    }
}

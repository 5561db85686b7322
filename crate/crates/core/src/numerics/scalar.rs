use num_traits::Zero;

use super::{Backend, ComplexScalar, ExactScalar, FloatScalar, Number};
use crate::{Error, Result};

/// Runtime-tagged scalar.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(ExactScalar),
    Float(FloatScalar),
    Complex(ComplexScalar),
}

/// Conversion out of the tagged union into a concrete backend type.
pub trait FromScalar: Number {
    fn from_scalar(s: Scalar) -> Result<Self>;
    fn into_scalar(self) -> Scalar;
}

impl FromScalar for ExactScalar {
    fn from_scalar(s: Scalar) -> Result<Self> {
        match s {
            Scalar::Exact(x) => Ok(x),
            other => Err(Error::BackendMismatch("exact", other.backend().name())),
        }
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Exact(self)
    }
}

impl FromScalar for FloatScalar {
    fn from_scalar(s: Scalar) -> Result<Self> {
        match s {
            Scalar::Float(x) => Ok(x),
            other => Err(Error::BackendMismatch("float", other.backend().name())),
        }
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Float(self)
    }
}

impl FromScalar for ComplexScalar {
    fn from_scalar(s: Scalar) -> Result<Self> {
        match s {
            Scalar::Complex(x) => Ok(x),
            other => Err(Error::BackendMismatch("complex", other.backend().name())),
        }
    }

    fn into_scalar(self) -> Scalar {
        Scalar::Complex(self)
    }
}

macro_rules! checked_binop {
    ($name:ident, $op:tt) => {
        pub fn $name(&self, rhs: &Scalar) -> Result<Scalar> {
            match (self, rhs) {
                (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a $op b)),
                (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a $op b)),
                (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a $op b)),
                (a, b) => Err(Error::BackendMismatch(a.backend().name(), b.backend().name())),
            }
        }
    };
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Exact(_) => Backend::Exact,
            Scalar::Float(_) => Backend::Float,
            Scalar::Complex(_) => Backend::Complex,
        }
    }

    /// Zero of the given backend at `precision` bits (ignored for exact).
    pub fn zero(backend: Backend, precision: u32) -> Result<Scalar> {
        crate::numerics::from_literal("0", backend, precision)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(x) => x.is_zero(),
            Scalar::Float(x) => x.is_zero(),
            Scalar::Complex(x) => x.is_zero(),
        }
    }

    checked_binop!(add, +);
    checked_binop!(sub, -);
    checked_binop!(mul, *);

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Ok(Scalar::Exact(a / b)),
            (Scalar::Float(a), Scalar::Float(b)) => Ok(Scalar::Float(a / b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Ok(Scalar::Complex(a / b)),
            (a, b) => Err(Error::BackendMismatch(a.backend().name(), b.backend().name())),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(x) => Scalar::Exact(-x),
            Scalar::Float(x) => Scalar::Float(-x),
            Scalar::Complex(x) => Scalar::Complex(-x.clone()),
        }
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Result<Scalar> {
        fn go<T: Number>(x: &T, n: i64) -> Result<T> {
            let p = x.powi(n.unsigned_abs() as usize);
            if n >= 0 {
                Ok(p)
            } else if x.is_zero() {
                Err(Error::DivisionByZero)
            } else {
                Ok(T::one() / p)
            }
        }
        Ok(match self {
            Scalar::Exact(x) => Scalar::Exact(go(x, n)?),
            Scalar::Float(x) => Scalar::Float(go(x, n)?),
            Scalar::Complex(x) => Scalar::Complex(go(x, n)?),
        })
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        match self {
            Scalar::Exact(x) => x.to_decimal(digits),
            Scalar::Float(x) => x.to_decimal(digits),
            Scalar::Complex(x) => x.to_decimal(digits),
        }
    }
}

/// Round-half-even decimal rendering with `digits` significant digits.
pub fn to_decimal_string(x: &Scalar, digits: usize) -> String {
    x.to_decimal(digits)
}

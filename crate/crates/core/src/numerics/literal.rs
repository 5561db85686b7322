use rug::{Integer, Rational};

use super::{Backend, ComplexScalar, ExactScalar, FloatScalar, Scalar};
use crate::{Error, Result};

/// A parsed, not yet realized, numeric literal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coefficient {
    /// Integer or `p/q`.
    Rational(Rational),
    /// Decimal such as `0.25`; held exactly.
    Decimal(Rational),
    /// Rational multiple of pi.
    Pi(Rational),
}

impl Coefficient {
    pub fn negate(self) -> Self {
        match self {
            Coefficient::Rational(q) => Coefficient::Rational(-q),
            Coefficient::Decimal(q) => Coefficient::Decimal(-q),
            Coefficient::Pi(q) => Coefficient::Pi(-q),
        }
    }

    /// Real value in the requested backend.
    pub fn realize(&self, backend: Backend, precision: u32) -> Result<Scalar> {
        let float = |q: &Rational| FloatScalar::from_rational_prec(q, precision);
        let value = match (self, backend) {
            (Coefficient::Pi(_), Backend::Exact) => return Err(Error::PiNotExact),
            (Coefficient::Rational(q) | Coefficient::Decimal(q), Backend::Exact) => {
                Scalar::Exact(ExactScalar(q.clone()))
            }
            (Coefficient::Rational(q) | Coefficient::Decimal(q), Backend::Float) => {
                Scalar::Float(float(q))
            }
            (Coefficient::Pi(q), Backend::Float) => {
                Scalar::Float(FloatScalar::pi(precision) * &float(q))
            }
            (_, Backend::Complex) => match self.realize(Backend::Float, precision)? {
                Scalar::Float(x) => Scalar::Complex(ComplexScalar::from_real(x)),
                _ => unreachable!(),
            },
            (_, Backend::Machine) => {
                return Err(Error::InvalidRequest(
                    "machine floats are not a literal backend".into(),
                ))
            }
        };
        Ok(value)
    }
}

fn parse_uint(text: &str, whole: &str) -> Result<Integer> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(whole, format!("expected digits, found `{text}`")));
    }
    Integer::parse(text)
        .map(Integer::from)
        .map_err(|e| Error::parse(whole, e.to_string()))
}

fn parse_denominator(text: &str, whole: &str) -> Result<Integer> {
    let d = parse_uint(text, whole)?;
    if d == 0 {
        return Err(Error::parse(whole, "zero denominator"));
    }
    Ok(d)
}

/// Parses `int | int/int | decimal | [int[*]]pi[/int]`, with an optional
/// leading sign. Whitespace is not allowed inside the literal.
pub fn parse_coefficient(text: &str) -> Result<Coefficient> {
    let (negative, body) = match text.as_bytes().first() {
        Some(b'-') => (true, &text[1..]),
        Some(b'+') => (false, &text[1..]),
        _ => (false, text),
    };
    if body.is_empty() {
        return Err(Error::parse(text, "empty literal"));
    }
    let coeff = if let Some(pos) = body.find("pi") {
        let (head, tail) = (&body[..pos], &body[pos + 2..]);
        let head = head.strip_suffix('*').unwrap_or(head);
        let num = if head.is_empty() {
            Integer::from(1)
        } else {
            parse_uint(head, text)?
        };
        let den = match tail {
            "" => Integer::from(1),
            _ => match tail.strip_prefix('/') {
                Some(d) => parse_denominator(d, text)?,
                None => return Err(Error::parse(text, format!("unexpected `{tail}` after pi"))),
            },
        };
        Coefficient::Pi(Rational::from((num, den)))
    } else if let Some((num, den)) = body.split_once('/') {
        Coefficient::Rational(Rational::from((
            parse_uint(num, text)?,
            parse_denominator(den, text)?,
        )))
    } else if let Some((int, frac)) = body.split_once('.') {
        if int.is_empty() && frac.is_empty() {
            return Err(Error::parse(text, "lone decimal point"));
        }
        let int = if int.is_empty() { Integer::new() } else { parse_uint(int, text)? };
        let frac_val = if frac.is_empty() { Integer::new() } else { parse_uint(frac, text)? };
        let scale = Integer::from(Integer::u_pow_u(10, frac.len() as u32));
        Coefficient::Decimal(Rational::from((int * &scale + frac_val, scale)))
    } else {
        Coefficient::Rational(Rational::from(parse_uint(body, text)?))
    };
    Ok(if negative { coeff.negate() } else { coeff })
}

/// Parses a single real literal into a [`Scalar`] of the given backend.
pub fn from_literal(text: &str, backend: Backend, precision: u32) -> Result<Scalar> {
    parse_coefficient(text.trim())?.realize(backend, precision)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Number;

    #[test]
    fn exact_fraction() {
        let x = from_literal("-3/2", Backend::Exact, 0).unwrap();
        assert_eq!(x, Scalar::Exact(ExactScalar::new(-3, 2)));
    }

    #[test]
    fn pi_at_precision() {
        let x = from_literal("pi", Backend::Float, 128).unwrap();
        let Scalar::Float(f) = x else { panic!() };
        assert_eq!(f.prec(), 128);
        assert_eq!(f.to_decimal(36), "3.14159265358979323846264338327950288");
        let half = from_literal("-pi/2", Backend::Float, 128).unwrap();
        let Scalar::Float(h) = half else { panic!() };
        assert_eq!(h * FloatScalar::with_prec(128, -2.0), f);
    }

    #[test]
    fn pi_rejected_in_exact_backend() {
        assert_eq!(from_literal("pi", Backend::Exact, 0), Err(Error::PiNotExact));
        assert_eq!(from_literal("-pi/2", Backend::Exact, 0), Err(Error::PiNotExact));
    }

    #[test]
    fn decimals_are_exact_in_exact_backend() {
        let x = from_literal("0.125", Backend::Exact, 0).unwrap();
        assert_eq!(x, Scalar::Exact(ExactScalar::new(1, 8)));
        assert_eq!(parse_coefficient(".5").unwrap(), Coefficient::Decimal(Rational::from((1, 2))));
    }

    #[test]
    fn malformed_literals() {
        for bad in ["", "-", "1/0", "a", "1//2", "pi2", "1.2.3", ".", "3x"] {
            assert!(matches!(parse_coefficient(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }
}

use std::cmp::Ordering;

use rug::ops::Pow;
use rug::{Integer, Rational};

/// Largest decimal exponent printed in positional notation; beyond this
/// (or below `-5`) scientific notation is used.
const SMALLEST_FIXED_EXPONENT: i64 = -5;

fn pow10(e: i64) -> Rational {
    let p = Integer::from(10).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from(p)
    } else {
        Rational::from((Integer::from(1), p))
    }
}

/// `floor(log10(a))` for a positive rational.
fn decimal_exponent(a: &Rational) -> i64 {
    let bits = a.numer().significant_bits() as f64 - a.denom().significant_bits() as f64;
    let mut e = (bits * std::f64::consts::LOG10_2).floor() as i64;
    while pow10(e) > *a {
        e -= 1;
    }
    while pow10(e + 1) <= *a {
        e += 1;
    }
    e
}

fn round_half_even(x: &Rational) -> Integer {
    let (rem, floor) = x.clone().fract_floor(Integer::new());
    match rem.cmp(&Rational::from((1, 2))) {
        Ordering::Less => floor,
        Ordering::Greater => floor + 1,
        Ordering::Equal => {
            if floor.is_even() {
                floor
            } else {
                floor + 1
            }
        }
    }
}

/// Renders `q` with `digits` significant digits, rounding half to even.
///
/// `digits` is clamped to at least 1. Zero renders as `0.000…` with the
/// requested number of digits.
pub fn render_rational(q: &Rational, digits: usize) -> String {
    let digits = digits.max(1);
    if q.cmp0() == Ordering::Equal {
        return if digits == 1 {
            "0".to_string()
        } else {
            format!("0.{}", "0".repeat(digits - 1))
        };
    }
    let negative = q.cmp0() == Ordering::Less;
    let a = Rational::from(q.abs_ref());
    let mut e = decimal_exponent(&a);
    let scaled = a * pow10(digits as i64 - 1 - e);
    let mut mantissa = round_half_even(&scaled);
    if mantissa == Integer::from(10).pow(digits as u32) {
        mantissa /= 10;
        e += 1;
    }
    let s = mantissa.to_string();
    debug_assert_eq!(s.len(), digits);

    let body = if e >= digits as i64 || e < SMALLEST_FIXED_EXPONENT {
        if digits == 1 {
            format!("{}e{}", s, e)
        } else {
            format!("{}.{}e{}", &s[..1], &s[1..], e)
        }
    } else if e >= 0 {
        let split = e as usize + 1;
        if split == digits {
            s
        } else {
            format!("{}.{}", &s[..split], &s[split..])
        }
    } else {
        format!("0.{}{}", "0".repeat((-e - 1) as usize), s)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::from((n, d))
    }

    #[test]
    fn third_to_five_digits() {
        assert_eq!(render_rational(&r(1, 3), 5), "0.33333");
        assert_eq!(render_rational(&r(2, 3), 5), "0.66667");
    }

    #[test]
    fn zero_keeps_digit_count() {
        assert_eq!(render_rational(&Rational::new(), 5), "0.0000");
        assert_eq!(render_rational(&Rational::new(), 15), "0.00000000000000");
        assert_eq!(render_rational(&Rational::new(), 1), "0");
    }

    #[test]
    fn half_even_ties() {
        assert_eq!(render_rational(&r(125, 100), 2), "1.2");
        assert_eq!(render_rational(&r(135, 100), 2), "1.4");
        assert_eq!(render_rational(&r(-125, 100), 2), "-1.2");
    }

    #[test]
    fn carry_into_next_decade() {
        assert_eq!(render_rational(&r(9999, 1000), 3), "10.0");
        assert_eq!(render_rational(&r(99999, 1), 3), "1.00e5");
    }

    #[test]
    fn fifteen_digit_values() {
        // a rational just below the 15-digit boundary
        let q = Rational::from((-4279687761678863i64, 1_000_000_000_000_000i64));
        assert_eq!(render_rational(&q, 15), "-4.27968776167886");
        let big = Rational::from((-356358556551898i64, 10000));
        assert_eq!(render_rational(&big, 15), "-35635855655.1898");
        assert_eq!(render_rational(&r(1, 1), 15), "1.00000000000000");
    }

    #[test]
    fn small_values_switch_to_scientific() {
        assert_eq!(render_rational(&r(1, 1000), 3), "0.00100");
        assert_eq!(render_rational(&r(1, 10_000_000), 2), "1.0e-7");
    }
}

use std::cmp::Ordering;

use rug::{Integer, Rational};

use super::{Backend, Number};

macro_rules! machine_number {
    ($t:ty, $from_f64:expr) => {
        impl Number for $t {
            const BACKEND: Backend = Backend::Machine;

            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn from_integer(n: &Integer) -> Self {
                $from_f64(n.to_f64())
            }

            fn from_rational(q: &Rational) -> Self {
                $from_f64(q.to_f64())
            }

            fn to_integer(&self) -> Option<Integer> {
                if self.is_finite() && self.fract() == 0.0 {
                    Integer::from_f64(f64::from(*self))
                } else {
                    None
                }
            }

            fn magnitude(&self) -> f64 {
                f64::from(self.abs())
            }

            fn cmp_abs_one(&self) -> Ordering {
                self.abs().partial_cmp(&1.0).unwrap_or(Ordering::Greater)
            }

            fn to_rational_parts(&self) -> Option<(Rational, Rational)> {
                Rational::from_f64(f64::from(*self)).map(|q| (q, Rational::new()))
            }
        }
    };
}

machine_number!(f64, |x: f64| x);
machine_number!(f32, |x: f64| x as f32);

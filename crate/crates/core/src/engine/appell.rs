use super::adaptive::{drive, IncrementalSum};
use super::classify::classify_lower;
use super::combine::{scale_row, slope_powers, truncated_product};
use super::{Expansion, LaurentSeries, LinearParam, TruncationPolicy};
use crate::numerics::{with_precision, Number, DEFAULT_PRECISION};
use crate::pochhammer::{PochhammerRows, ReciprocalRows};
use crate::{Error, Result};

/// Expansion problem for
/// `F4(a1, a2; b1, b2; x1, x2) = sum (a1)_{m1+m2} (a2)_{m1+m2} / ((b1)_m1 (b2)_m2) x1^m1 x2^m2 / (m1! m2!)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Appell4Request<T> {
    pub upper: [LinearParam<T>; 2],
    pub lower: [LinearParam<T>; 2],
    pub x1: T,
    pub x2: T,
    pub n_max: usize,
    /// Applies to the total degree `m1 + m2`.
    pub truncation: TruncationPolicy,
    /// Skip the convergence-domain check.
    pub formal_mode: bool,
    pub precision: u32,
}

impl<T: Number> Appell4Request<T> {
    pub fn new(upper: [LinearParam<T>; 2], lower: [LinearParam<T>; 2], x1: T, x2: T, n_max: usize, m: usize) -> Self {
        Appell4Request {
            upper,
            lower,
            x1,
            x2,
            n_max,
            truncation: TruncationPolicy::Fixed { m },
            formal_mode: false,
            precision: DEFAULT_PRECISION,
        }
    }

    pub fn with_truncation(mut self, truncation: TruncationPolicy) -> Self {
        self.truncation = truncation;
        self
    }

    pub fn with_formal_mode(mut self, formal: bool) -> Self {
        self.formal_mode = formal;
        self
    }

    pub fn with_precision(mut self, bits: u32) -> Self {
        self.precision = bits;
        self
    }

    /// Largest total degree with a nonzero term, if finite.
    pub fn termination_index(&self) -> Option<usize> {
        if self.x1.is_zero() && self.x2.is_zero() {
            return Some(0);
        }
        self.upper.iter().filter_map(|a| a.termination_index()).min()
    }
}

/// One-variable part `Q[m](b) x^m / m!`, scaled by slope powers, kept for
/// every `m` reached so far.
struct Marginal<T> {
    rows: ReciprocalRows<T>,
    powers: Vec<T>,
    x: T,
    weight: T,
    vectors: Vec<Vec<T>>,
}

impl<T: Number> Marginal<T> {
    fn new(param: &LinearParam<T>, x: &T, len: usize) -> Self {
        Marginal {
            rows: ReciprocalRows::new(param.constant.clone(), len - 1),
            powers: slope_powers(&param.slope, len),
            x: x.clone(),
            weight: T::one(),
            vectors: Vec::new(),
        }
    }

    fn push_next(&mut self) -> Result<()> {
        let m = self.vectors.len();
        let v = scale_row(self.rows.row(), &self.powers)
            .into_iter()
            .map(|c| c * &self.weight)
            .collect();
        self.vectors.push(v);
        self.rows.advance()?;
        self.weight = self.weight.clone() * &self.x / T::from_usize(m + 1);
        Ok(())
    }
}

/// Diagonal-by-diagonal sum over total degree `s = m1 + m2`.
struct AppellSum<T> {
    uppers: Vec<(PochhammerRows<T>, Vec<T>)>,
    first: Marginal<T>,
    second: Marginal<T>,
    next_s: usize,
    coeffs: Vec<T>,
}

impl<T: Number> AppellSum<T> {
    fn new(req: &Appell4Request<T>) -> Self {
        let len = req.n_max + 1;
        AppellSum {
            uppers: req
                .upper
                .iter()
                .map(|a| (PochhammerRows::new(a.constant.clone(), req.n_max), slope_powers(&a.slope, len)))
                .collect(),
            first: Marginal::new(&req.lower[0], &req.x1, len),
            second: Marginal::new(&req.lower[1], &req.x2, len),
            next_s: 0,
            coeffs: vec![T::zero(); len],
        }
    }

    fn add_diagonal(&mut self) -> Result<()> {
        let s = self.next_s;
        self.first.push_next()?;
        self.second.push_next()?;
        let len = self.coeffs.len();
        let mut lowers = vec![T::zero(); len];
        for m1 in 0..=s {
            let part = truncated_product(&self.first.vectors[m1], &self.second.vectors[s - m1]);
            for (acc, c) in lowers.iter_mut().zip(part) {
                *acc = acc.clone() + c;
            }
        }
        let mut term = lowers;
        for (rows, pw) in &self.uppers {
            term = truncated_product(&scale_row(rows.row(), pw), &term);
        }
        for (acc, c) in self.coeffs.iter_mut().zip(term) {
            *acc = acc.clone() + c;
        }
        for (rows, _) in &mut self.uppers {
            rows.advance();
        }
        self.next_s += 1;
        Ok(())
    }
}

impl<T: Number> IncrementalSum<T> for AppellSum<T> {
    fn sum_to(&mut self, m: usize) -> Result<()> {
        while self.next_s <= m {
            self.add_diagonal()?;
        }
        Ok(())
    }

    fn snapshot(&self) -> LaurentSeries<T> {
        LaurentSeries {
            min_order: 0,
            coeffs: self.coeffs.clone(),
        }
    }
}

/// Taylor coefficients `C_0 ..= C_n_max` of the `eps`-expansion of Appell
/// `F4`. Both lower parameters must be regular at `eps = 0`.
pub fn expand_appell_f4<T: Number>(req: &Appell4Request<T>) -> Result<Expansion<T>> {
    with_precision(req.precision, || {
        req.truncation.validate()?;
        let classes = classify_lower(&req.lower)?;
        if classes.singular_count() > 0 {
            return Err(Error::InvalidRequest(
                "Appell F4 with singular lower parameters is not supported".into(),
            ));
        }
        let termination = req.termination_index();
        if termination.is_none() && !req.formal_mode {
            let reach = req.x1.magnitude().sqrt() + req.x2.magnitude().sqrt();
            if reach.is_nan() || reach >= 1.0 {
                return Err(Error::DivergentSeries(
                    "Appell F4 needs sqrt|x1| + sqrt|x2| < 1 (use formal mode to override)".into(),
                ));
            }
        }
        let (series, m_used) = drive(AppellSum::new(req), &req.truncation, termination)?;
        Ok(Expansion {
            series,
            m_used,
            coincident_thresholds: false,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ExactScalar;
    use rug::Integer;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d)
    }

    fn fixture(x1: ExactScalar, x2: ExactScalar, m: usize) -> Appell4Request<ExactScalar> {
        let one = || LinearParam::fixed(q(1, 1));
        let shifted = || LinearParam::new(q(1, 1), q(1, 1));
        Appell4Request::new([one(), shifted()], [shifted(), shifted()], x1, x2, 2, m)
    }

    #[test]
    fn leading_coefficient_is_binomial_square_sum() {
        let out = expand_appell_f4(&fixture(q(1, 10), q(1, 5), 2)).unwrap();
        assert_eq!(out.series.coeffs[0], q(143, 100));
        let out = expand_appell_f4(&fixture(q(1, 10), q(1, 5), 12)).unwrap();
        let mut c0 = q(0, 1);
        for m1 in 0..=12u32 {
            for m2 in 0..=(12 - m1) {
                let b = ExactScalar::from_integer(&Integer::from(Integer::binomial_u(m1 + m2, m1)));
                c0 = c0 + b.clone() * b * q(1, 10).powi(m1 as usize) * q(1, 5).powi(m2 as usize);
            }
        }
        assert_eq!(out.series.coeffs[0], c0);
    }

    #[test]
    fn first_order_vanishes_on_an_axis() {
        let out = expand_appell_f4(&fixture(q(1, 3), q(0, 1), 20)).unwrap();
        assert_eq!(out.series.coeffs[1], q(0, 1));
    }

    #[test]
    fn origin_gives_unit_series() {
        let out = expand_appell_f4(&fixture(q(0, 1), q(0, 1), 20)).unwrap();
        assert_eq!(out.series.coeffs, vec![q(1, 1), q(0, 1), q(0, 1)]);
        assert_eq!(out.m_used, 0);
    }

    #[test]
    fn domain_and_singular_checks() {
        assert!(matches!(
            expand_appell_f4(&fixture(q(1, 2), q(1, 2), 10)),
            Err(Error::DivergentSeries(_))
        ));
        assert!(expand_appell_f4(&fixture(q(1, 2), q(1, 2), 10).with_formal_mode(true)).is_ok());
        let mut singular = fixture(q(1, 10), q(1, 10), 10);
        singular.lower[0] = LinearParam::new(q(0, 1), q(1, 1));
        assert!(matches!(expand_appell_f4(&singular), Err(Error::InvalidRequest(_))));
    }
}

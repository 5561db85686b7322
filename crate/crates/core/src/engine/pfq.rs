use super::adaptive::{drive, IncrementalSum};
use super::classify::{classify_lower, LowerClassification};
use super::combine::{scale_row, slope_powers, truncated_product};
use super::{Expansion, ExpansionRequest, LaurentSeries};
use crate::numerics::{with_precision, Number};
use crate::pochhammer::{PochhammerRows, ReciprocalRows};
use crate::{Error, Result};

/// Running sum over `m` of the expanded `pFq` terms.
///
/// Term `m` is the truncated product of all factor vectors times
/// `z^m / m!`. With `j` singular lowers already regularized at this `m`,
/// the product's order-`n` entry lands in `C_{n-j}` divided by the `j`
/// regularized slopes, which is the region splitting of the series at the
/// sorted thresholds `N_1 <= ... <= N_r`.
pub(crate) struct PfqSum<T> {
    uppers: Vec<(PochhammerRows<T>, Vec<T>)>,
    lowers: Vec<(ReciprocalRows<T>, Vec<T>)>,
    lower_slopes: Vec<T>,
    z: T,
    weight: T,
    next_m: usize,
    n_max: usize,
    singular: usize,
    coeffs: Vec<T>,
}

impl<T: Number> PfqSum<T> {
    pub(crate) fn new(req: &ExpansionRequest<T>, kinds: &[LowerClassification]) -> Self {
        let singular = kinds
            .iter()
            .filter(|k| matches!(k, LowerClassification::Singular { .. }))
            .count();
        // inner products are needed up to order n_max + r before the shift
        let len = req.n_max + singular + 1;
        let uppers = req
            .upper
            .iter()
            .map(|a| {
                (
                    PochhammerRows::new(a.constant.clone(), len - 1),
                    slope_powers(&a.slope, len),
                )
            })
            .collect();
        let lowers = req
            .lower
            .iter()
            .zip(kinds)
            .map(|(b, kind)| {
                let rows = match *kind {
                    LowerClassification::Regular => ReciprocalRows::new(b.constant.clone(), len - 1),
                    LowerClassification::Singular { threshold } => {
                        ReciprocalRows::regularized(b.constant.clone(), threshold, len - 1)
                    }
                };
                (rows, slope_powers(&b.slope, len))
            })
            .collect();
        PfqSum {
            uppers,
            lowers,
            lower_slopes: req.lower.iter().map(|b| b.slope.clone()).collect(),
            z: req.z.clone(),
            weight: T::one(),
            next_m: 0,
            n_max: req.n_max,
            singular,
            coeffs: vec![T::zero(); req.n_max + singular + 1],
        }
    }

    fn add_term(&mut self) -> Result<()> {
        let len = self.n_max + self.singular + 1;
        let mut product: Option<Vec<T>> = None;
        let factors = self
            .uppers
            .iter()
            .map(|(rows, pw)| scale_row(rows.row(), pw))
            .chain(self.lowers.iter().map(|(rows, pw)| scale_row(rows.row(), pw)));
        for v in factors {
            product = Some(match product {
                None => v,
                Some(acc) => truncated_product(&acc, &v),
            });
        }
        let product = product.unwrap_or_else(|| {
            let mut unit = vec![T::zero(); len];
            unit[0] = T::one();
            unit
        });

        let mut shift = 0;
        let mut scale = self.weight.clone();
        for ((rows, _), slope) in self.lowers.iter().zip(&self.lower_slopes) {
            if rows.is_regularized() {
                shift += 1;
                scale = scale / slope;
            }
        }
        // entry n goes to order n - shift, stored at index n - shift + r
        let offset = self.singular - shift;
        for (n, c) in product.into_iter().enumerate().take(self.n_max + shift + 1) {
            if !c.is_zero() {
                let slot = &mut self.coeffs[n + offset];
                *slot = slot.clone() + c * &scale;
            }
        }

        for (rows, _) in &mut self.uppers {
            rows.advance();
        }
        for (rows, _) in &mut self.lowers {
            rows.advance()?;
        }
        self.next_m += 1;
        self.weight = self.weight.clone() * &self.z / T::from_usize(self.next_m);
        Ok(())
    }
}

impl<T: Number> IncrementalSum<T> for PfqSum<T> {
    fn sum_to(&mut self, m: usize) -> Result<()> {
        while self.next_m <= m {
            self.add_term()?;
        }
        Ok(())
    }

    fn snapshot(&self) -> LaurentSeries<T> {
        LaurentSeries {
            min_order: -(self.singular as i64),
            coeffs: self.coeffs.clone(),
        }
    }
}

pub(crate) fn check_pfq_convergence<T: Number>(req: &ExpansionRequest<T>) -> Result<()> {
    if req.termination_index().is_some() {
        return Ok(());
    }
    let (p, q) = (req.upper.len(), req.lower.len());
    if p == q + 1 && req.z.cmp_abs_one() != std::cmp::Ordering::Less {
        return Err(Error::DivergentSeries(format!(
            "{p}F{q} needs |z| < 1"
        )));
    }
    if p > q + 1 {
        return Err(Error::DivergentSeries(format!(
            "{p}F{q} has zero radius of convergence unless it terminates"
        )));
    }
    Ok(())
}

/// Coefficients `C_n(z)`, `n = -r ..= n_max`, of the `eps`-expansion of
/// `pFq(A + a eps; B + b eps; z)` where `r` is the number of singular lower
/// parameters.
pub fn expand_pfq<T: Number>(req: &ExpansionRequest<T>) -> Result<Expansion<T>> {
    with_precision(req.precision, || {
        req.truncation.validate()?;
        let classes = classify_lower(&req.lower)?;
        check_pfq_convergence(req)?;
        let summer = PfqSum::new(req, &classes.kinds);
        let (series, m_used) = drive(summer, &req.truncation, req.termination_index())?;
        Ok(Expansion {
            series,
            m_used,
            coincident_thresholds: classes.has_coincident_thresholds(),
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{LinearParam, TruncationPolicy};
    use crate::numerics::ExactScalar;

    fn q(n: i64, d: i64) -> ExactScalar {
        ExactScalar::new(n, d)
    }

    fn lp(c: (i64, i64), s: (i64, i64)) -> LinearParam<ExactScalar> {
        LinearParam::new(q(c.0, c.1), q(s.0, s.1))
    }

    #[test]
    fn gauss_low_orders_are_exact() {
        let req = ExpansionRequest::new(
            vec![lp((0, 1), (2, 3)), lp((0, 1), (-5, 7))],
            vec![lp((1, 1), (3, 4))],
            q(1, 2),
            3,
            30,
        );
        let out = expand_pfq(&req).unwrap();
        assert_eq!(out.series.min_order, 0);
        assert_eq!(out.series.coeffs[0], q(1, 1));
        assert_eq!(out.series.coeffs[1], q(0, 1));
        // C2 = a1 a2 sum_{m=1}^{M} z^m / m^2
        let mut li2 = q(0, 1);
        for m in 1..=30i64 {
            li2 = li2 + q(1, 2).powi(m as usize) / q(m * m, 1);
        }
        assert_eq!(out.series.coeffs[2], q(2, 3) * q(-5, 7) * li2);
    }

    #[test]
    fn geometric_series_has_no_eps_dependence() {
        // 1F0(1;;z) = 1/(1-z) with slope-free parameter
        let req = ExpansionRequest::new(vec![LinearParam::fixed(q(1, 1))], vec![], q(1, 3), 2, 40);
        let out = expand_pfq(&req).unwrap();
        let partial = (0..=40).fold(q(0, 1), |acc, m| acc + q(1, 3).powi(m));
        assert_eq!(out.series.coeffs, vec![partial, q(0, 1), q(0, 1)]);
    }

    #[test]
    fn exponential_with_no_parameters() {
        let req = ExpansionRequest::new(vec![], vec![], q(1, 1), 1, 10);
        let out = expand_pfq(&req).unwrap();
        let mut e = q(0, 1);
        let mut term = q(1, 1);
        for m in 0..=10i64 {
            e = e + &term;
            term = term / q(m + 1, 1);
        }
        assert_eq!(out.series.coeffs, vec![e, q(0, 1)]);
    }

    #[test]
    fn singular_lower_gives_laurent_series() {
        // 1F1(eps; 2 eps; z): the pole of 1/(2eps)_m cancels against (eps)_m,
        // leaving C_{-1} = 0 and C_0 = 1 + (1/2) sum_{m>=1} z^m/m!
        let req = ExpansionRequest::new(vec![lp((0, 1), (1, 1))], vec![lp((0, 1), (2, 1))], q(1, 1), 1, 12);
        let out = expand_pfq(&req).unwrap();
        assert_eq!(out.series.min_order, -1);
        assert_eq!(out.series.coeffs[0], q(0, 1));
        let mut tail = q(0, 1);
        let mut term = q(1, 1);
        for m in 1..=12i64 {
            term = term / q(m, 1);
            tail = tail + &term;
        }
        assert_eq!(out.series.coeffs[1], q(1, 1) + tail / q(2, 1));
    }

    #[test]
    fn genuine_pole_at_minus_one_order() {
        // 1F1(1; eps; z) = 1 + (z/eps) sum_{m>=1} ... has C_{-1} = z e^z partial sums
        let req = ExpansionRequest::new(vec![LinearParam::fixed(q(1, 1))], vec![lp((0, 1), (1, 1))], q(1, 2), 0, 20);
        let out = expand_pfq(&req).unwrap();
        // C_{-1} = sum_{m>=1} z^m / (m-1)!  (Qhat[m][0](0) = 1/(m-1)!, (1)_m = m!)
        let mut expect = q(0, 1);
        let mut term = q(1, 2);
        for m in 1..=20i64 {
            expect = expect + &term;
            term = term * q(1, 2) / q(m, 1);
        }
        assert_eq!(out.series.coeffs[0], expect);
    }

    #[test]
    fn terminating_series_clamps_m() {
        let req = ExpansionRequest::new(
            vec![LinearParam::fixed(q(-2, 1)), lp((1, 1), (1, 1))],
            vec![lp((3, 1), (1, 1))],
            q(5, 1),
            2,
            50,
        );
        let out = expand_pfq(&req).unwrap();
        assert_eq!(out.m_used, 2);
    }

    #[test]
    fn convergence_guards() {
        let two_f_one = |z: ExactScalar| {
            ExpansionRequest::new(vec![lp((1, 1), (1, 1)), lp((1, 1), (0, 1))], vec![lp((2, 1), (1, 1))], z, 1, 10)
        };
        assert!(matches!(expand_pfq(&two_f_one(q(1, 1))), Err(Error::DivergentSeries(_))));
        assert!(matches!(expand_pfq(&two_f_one(q(-3, 2))), Err(Error::DivergentSeries(_))));
        assert!(expand_pfq(&two_f_one(q(-1, 2))).is_ok());
        let three_f_one = ExpansionRequest::new(
            vec![lp((1, 1), (1, 1)), lp((1, 1), (0, 1)), lp((1, 1), (0, 1))],
            vec![lp((2, 1), (1, 1))],
            q(1, 100),
            1,
            10,
        );
        assert!(matches!(expand_pfq(&three_f_one), Err(Error::DivergentSeries(_))));
        let unresolvable = ExpansionRequest::new(vec![], vec![LinearParam::fixed(q(-2, 1))], q(1, 2), 1, 10);
        assert_eq!(expand_pfq(&unresolvable).unwrap_err(), Error::UnresolvablePole { index: 0 });
        let bad_policy = two_f_one(q(1, 2)).with_truncation(TruncationPolicy::Fixed { m: 0 });
        assert!(matches!(expand_pfq(&bad_policy), Err(Error::InvalidRequest(_))));
    }
}

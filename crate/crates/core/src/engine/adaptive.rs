use super::{Expansion, ExpansionRequest, LaurentSeries, TruncationPolicy};
use crate::numerics::Number;
use crate::{Error, Result};

/// A sum that can be extended to larger truncation indices without
/// recomputing the terms already added.
pub(crate) trait IncrementalSum<T> {
    /// Includes every term up to and including index `m`.
    fn sum_to(&mut self, m: usize) -> Result<()>;
    fn snapshot(&self) -> LaurentSeries<T>;
}

/// Per-coefficient change test: relative below `tol`, or absolute below
/// `tol` for coefficients that are themselves smaller than `tol`.
pub(crate) fn converged<T: Number>(prev: &[T], cur: &[T], tol: f64) -> bool {
    prev.iter().zip(cur).all(|(a, b)| {
        let change = (b.clone() - a).magnitude();
        let size = b.magnitude();
        if size < tol {
            change < tol
        } else {
            change < tol * size
        }
    })
}

/// Runs `summer` under `policy`, returning the series and the `M` used.
/// In adaptive mode that is the first checkpoint whose coefficients agree
/// with those at twice the truncation.
/// A terminating sum is always taken to its last nonzero term when that
/// comes before the requested truncation.
pub(crate) fn drive<T: Number, S: IncrementalSum<T>>(
    mut summer: S,
    policy: &TruncationPolicy,
    termination: Option<usize>,
) -> Result<(LaurentSeries<T>, usize)> {
    match *policy {
        TruncationPolicy::Fixed { m } => {
            let m = termination.map_or(m, |k| k.min(m));
            summer.sum_to(m)?;
            Ok((summer.snapshot(), m))
        }
        TruncationPolicy::Adaptive { m_start, tol, m_cap } => {
            if let Some(k) = termination {
                summer.sum_to(k)?;
                return Ok((summer.snapshot(), k));
            }
            // the reported M is the checkpoint confirmed by the next doubling
            let mut m = m_start;
            summer.sum_to(m)?;
            let mut prev = summer.snapshot();
            while m < m_cap {
                let next = (2 * m).min(m_cap);
                summer.sum_to(next)?;
                let cur = summer.snapshot();
                if converged(&prev.coeffs, &cur.coeffs, tol) {
                    return Ok((prev, m));
                }
                prev = cur;
                m = next;
            }
            Err(Error::TruncationNotConverged { m_cap })
        }
    }
}

/// Expands with an adaptive truncation policy, reporting the `M` at which
/// the coefficients stopped changing.
pub fn run_adaptive<T: Number>(req: &ExpansionRequest<T>) -> Result<Expansion<T>> {
    if !matches!(req.truncation, TruncationPolicy::Adaptive { .. }) {
        return Err(Error::InvalidRequest("adaptive run needs an adaptive truncation policy".into()));
    }
    super::expand_pfq(req)
}

use super::LinearParam;
use crate::numerics::Number;
use crate::pochhammer::{p_deriv_row, q_deriv_row, q_hat_row, DerivRow};
use crate::{Error, Result};

/// Which kernel a parameter feeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorRole {
    Upper,
    LowerRegular,
    /// Regularized kernel; requires `m > threshold`.
    LowerSingular { threshold: usize },
}

/// `[1, s, s^2, ..., s^len-1]`.
pub(crate) fn slope_powers<T: Number>(slope: &T, len: usize) -> Vec<T> {
    let mut out = Vec::with_capacity(len);
    let mut p = T::one();
    for _ in 0..len {
        out.push(p.clone());
        p = p * slope;
    }
    out
}

pub(crate) fn scale_row<T: Number>(row: &DerivRow<T>, powers: &[T]) -> Vec<T> {
    row.values
        .iter()
        .zip(powers)
        .map(|(v, p)| v.clone() * p)
        .collect()
}

/// Taylor coefficients in `eps` (orders `0..=n_max`) of one factor of the
/// `m`-th term: `slope^k` times the kernel evaluated at the constant part.
pub fn factor_vector<T: Number>(
    param: &LinearParam<T>,
    role: FactorRole,
    m: usize,
    n_max: usize,
) -> Result<Vec<T>> {
    let row = match role {
        FactorRole::Upper => p_deriv_row(&param.constant, m, n_max),
        FactorRole::LowerRegular => q_deriv_row(&param.constant, m, n_max)?,
        FactorRole::LowerSingular { threshold } => {
            q_hat_row(threshold, &param.constant, m, n_max)?
        }
    };
    Ok(scale_row(&row, &slope_powers(&param.slope, n_max + 1)))
}

/// Product of truncated power series: entry `n` is the sum over all
/// compositions `k_1 + ... + k_r = n` of `v_1[k_1] ... v_r[k_r]`.
pub fn combine_factors<T: Number>(vectors: &[Vec<T>]) -> Result<Vec<T>> {
    let (first, rest) = vectors
        .split_first()
        .ok_or_else(|| Error::InvalidRequest("no factor vectors to combine".into()))?;
    let len = first.len();
    if rest.iter().any(|v| v.len() != len) {
        return Err(Error::InvalidRequest("factor vectors differ in length".into()));
    }
    let mut acc = first.clone();
    for v in rest {
        acc = truncated_product(&acc, v);
    }
    Ok(acc)
}

pub(crate) fn truncated_product<T: Number>(a: &[T], b: &[T]) -> Vec<T> {
    let len = a.len();
    let mut out = vec![T::zero(); len];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b[..len - i].iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = out[i + j].clone() + ai.clone() * bj;
            }
        }
    }
    out
}

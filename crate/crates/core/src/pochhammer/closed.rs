//! Explicit sums for the derivative kernels.

use rug::{Integer, Rational};

use super::{pochhammer, StirlingTable};
use crate::numerics::Number;
use crate::{Error, Result};

/// `(-1)^l / (l! (m-1-l)!)`, the partial-fraction weights of `1/(b)_m`.
fn partial_fraction_weight(m: usize, l: usize) -> Rational {
    let den = Integer::from(Integer::factorial(l as u32))
        * Integer::from(Integer::factorial((m - 1 - l) as u32));
    let q = Rational::from((Integer::from(1), den));
    if l % 2 == 1 {
        -q
    } else {
        q
    }
}

fn check_pole<T: Number>(beta: &T, m: usize, skip: Option<usize>) -> Result<()> {
    for l in 0..m {
        if Some(l) != skip && (beta.clone() + T::from_usize(l)).is_zero() {
            return Err(Error::PoleAtBeta { offset: l });
        }
    }
    Ok(())
}

/// `P[m][k](alpha) = (-1)^(m-k) sum_{l=0}^{m-k} (-1)^l C(m,l) s(m-l,k) (alpha)_l`.
pub fn p_deriv<T: Number>(alpha: &T, m: usize, k: usize, table: &StirlingTable) -> Result<T> {
    if m > table.n_max() {
        return Err(Error::OutOfRange(format!(
            "m = {m} exceeds Stirling table n_max = {}",
            table.n_max()
        )));
    }
    if k > m {
        return Ok(T::zero());
    }
    let mut sum = T::zero();
    let mut rising = T::one();
    for l in 0..=m - k {
        if l > 0 {
            rising = rising * (alpha.clone() + T::from_usize(l - 1));
        }
        let mut c = Integer::from(Integer::binomial_u(m as u32, l as u32)) * table.get(m - l, k)?;
        if (m - k + l) % 2 == 1 {
            c = -c;
        }
        sum = sum + T::from_integer(&c) * &rising;
    }
    Ok(sum)
}

/// `Q[m][k](beta) = (-1)^k sum_{l<m} (-1)^l / (l!(m-1-l)!) (beta+l)^-(k+1)`.
///
/// `k = 0` uses the direct reciprocal product.
pub fn q_deriv<T: Number>(beta: &T, m: usize, k: usize) -> Result<T> {
    if m == 0 {
        return Ok(if k == 0 { T::one() } else { T::zero() });
    }
    check_pole(beta, m, None)?;
    if k == 0 {
        return Ok(T::one() / pochhammer(beta, m));
    }
    let mut sum = T::zero();
    for l in 0..m {
        let base = T::one() / (beta.clone() + T::from_usize(l));
        sum = sum + T::from_rational(&partial_fraction_weight(m, l)) * base.powi(k + 1);
    }
    Ok(if k % 2 == 1 { -sum } else { sum })
}

/// Derivatives of the regularized reciprocal symbol `(beta+N)/(beta)_m`:
/// `(-1)^k sum_{l != N} (-1)^l/(l!(m-1-l)!) (N-l)/(beta+l)^(k+1)`, plus the
/// constant `1` when `m = 1, k = 0`.
pub fn q_hat_deriv<T: Number>(n_sing: usize, beta: &T, m: usize, k: usize) -> Result<T> {
    if n_sing >= m {
        return Err(Error::OutOfRange(format!(
            "regularization point N = {n_sing} requires m > N, got m = {m}"
        )));
    }
    check_pole(beta, m, Some(n_sing))?;
    let mut sum = T::zero();
    for l in (0..m).filter(|&l| l != n_sing) {
        let base = T::one() / (beta.clone() + T::from_usize(l));
        let w = partial_fraction_weight(m, l) * (n_sing as i64 - l as i64);
        sum = sum + T::from_rational(&w) * base.powi(k + 1);
    }
    if k % 2 == 1 {
        sum = -sum;
    }
    if m == 1 && k == 0 {
        sum = sum + T::one();
    }
    Ok(sum)
}

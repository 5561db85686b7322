//! Kernel rows built by recurrence in `m`.
//!
//! ```text
//! P[m+1][k] = (a + m) P[m][k] + P[m][k-1]
//! Q[m+1][k] = (Q[m][k] - Q[m+1][k-1]) / (b + m)
//! ```
//!
//! The regularized row obeys the `Q` recurrence for `m > N` and starts from
//! `Qhat[N+1] = Q[N]`.

use super::DerivRow;
use crate::numerics::Number;
use crate::{Error, Result};

/// Running `P` row for a fixed argument; starts at `m = 0`.
#[derive(Debug, Clone)]
pub struct PochhammerRows<T> {
    alpha: T,
    row: DerivRow<T>,
}

impl<T: Number> PochhammerRows<T> {
    pub fn new(alpha: T, k_max: usize) -> Self {
        PochhammerRows {
            alpha,
            row: DerivRow::unit(0, k_max),
        }
    }

    pub fn row(&self) -> &DerivRow<T> {
        &self.row
    }

    pub fn advance(&mut self) {
        let shift = self.alpha.clone() + T::from_usize(self.row.m);
        let v = &mut self.row.values;
        for k in (1..v.len()).rev() {
            let below = v[k - 1].clone();
            v[k] = shift.clone() * &v[k] + below;
        }
        v[0] = shift * &v[0];
        self.row.m += 1;
    }
}

/// Running `Q` row for a fixed argument, optionally switching to the
/// regularized kernel once `m` passes `regularize_at`.
#[derive(Debug, Clone)]
pub struct ReciprocalRows<T> {
    beta: T,
    regularize_at: Option<usize>,
    row: DerivRow<T>,
}

impl<T: Number> ReciprocalRows<T> {
    pub fn new(beta: T, k_max: usize) -> Self {
        ReciprocalRows {
            beta,
            regularize_at: None,
            row: DerivRow::unit(0, k_max),
        }
    }

    /// Rows of `Q[m]` for `m <= n_sing` and of `Qhat[m]` (pole at
    /// `beta = -n_sing` removed) for `m > n_sing`.
    pub fn regularized(beta: T, n_sing: usize, k_max: usize) -> Self {
        ReciprocalRows {
            beta,
            regularize_at: Some(n_sing),
            row: DerivRow::unit(0, k_max),
        }
    }

    pub fn row(&self) -> &DerivRow<T> {
        &self.row
    }

    /// True once the current row is a regularized one.
    pub fn is_regularized(&self) -> bool {
        self.regularize_at.is_some_and(|n| self.row.m > n)
    }

    pub fn advance(&mut self) -> Result<()> {
        let m = self.row.m;
        if self.regularize_at == Some(m) {
            self.row.m += 1;
            return Ok(());
        }
        let shift = self.beta.clone() + T::from_usize(m);
        if shift.is_zero() {
            return Err(Error::PoleAtBeta { offset: m });
        }
        let inv = T::one() / shift;
        let v = &mut self.row.values;
        v[0] = v[0].clone() * &inv;
        for k in 1..v.len() {
            let lower = v[k - 1].clone();
            v[k] = (v[k].clone() - lower) * &inv;
        }
        self.row.m += 1;
        Ok(())
    }
}

/// Row of `P[m][k](alpha)`, `k = 0..=k_max`.
pub fn p_deriv_row<T: Number>(alpha: &T, m: usize, k_max: usize) -> DerivRow<T> {
    let mut rows = PochhammerRows::new(alpha.clone(), k_max);
    for _ in 0..m {
        rows.advance();
    }
    rows.row
}

/// Row of `Q[m][k](beta)`, `k = 0..=k_max`.
pub fn q_deriv_row<T: Number>(beta: &T, m: usize, k_max: usize) -> Result<DerivRow<T>> {
    let mut rows = ReciprocalRows::new(beta.clone(), k_max);
    for _ in 0..m {
        rows.advance()?;
    }
    Ok(rows.row)
}

/// Row of `Qhat[m][k](beta)` for regularization point `n_sing < m`.
pub fn q_hat_row<T: Number>(
    n_sing: usize,
    beta: &T,
    m: usize,
    k_max: usize,
) -> Result<DerivRow<T>> {
    if m <= n_sing {
        return Err(Error::OutOfRange(format!(
            "regularized row needs m > N, got m = {m}, N = {n_sing}"
        )));
    }
    let mut rows = ReciprocalRows::regularized(beta.clone(), n_sing, k_max);
    for _ in 0..m {
        rows.advance()?;
    }
    Ok(rows.row)
}

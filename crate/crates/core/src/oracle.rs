//! Independent reference computations used to cross-check the engine.
//!
//! Nothing here touches the derivative kernels: series are summed directly
//! at concrete `eps`, derivatives are taken by finite differences, and the
//! closed-form Gauss and Appell coefficients are evaluated from their
//! defining sums.

use num_traits::{One, Zero};
use rug::{Integer, Rational};

use crate::engine::{ExpansionRequest, LinearParam};
use crate::numerics::{with_precision, FloatScalar, Number};
use crate::pochhammer::harmonic;
use crate::{Error, Result};

/// Settings shared by the oracle evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleConfig {
    /// Truncation of the hypergeometric sum.
    pub m: usize,
    /// Float precision in bits.
    pub precision: u32,
    /// Finite-difference step.
    pub h: f64,
}

impl OracleConfig {
    pub fn new(m: usize, precision: u32, h: f64) -> Self {
        OracleConfig { m, precision, h }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m < 1 {
            return Err(Error::InvalidRequest("oracle M must be at least 1".into()));
        }
        if self.precision < 128 {
            return Err(Error::InvalidRequest("finite differences need at least 128 bits".into()));
        }
        if !(self.h > 0.0 && self.h < 1.0) {
            return Err(Error::InvalidRequest("finite-difference step must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

/// `sum_{m=0}^{M} prod (alpha_i)_m / prod (beta_j)_m z^m / m!` with every
/// parameter evaluated at `eps`.
pub fn direct_series_value<T: Number>(
    upper: &[LinearParam<T>],
    lower: &[LinearParam<T>],
    z: &T,
    eps: &T,
    m_max: usize,
) -> Result<T> {
    let alphas: Vec<T> = upper.iter().map(|a| a.at(eps)).collect();
    let betas: Vec<T> = lower.iter().map(|b| b.at(eps)).collect();
    let mut term = T::one();
    let mut sum = T::one();
    for m in 0..m_max {
        let shift = T::from_usize(m);
        let mut num = z.clone();
        for a in &alphas {
            num = num * &(a.clone() + &shift);
        }
        let mut den = T::from_usize(m + 1);
        for (index, b) in betas.iter().enumerate() {
            let factor = b.clone() + &shift;
            if factor.is_zero() {
                return Err(Error::PoleAtEps { index, m });
            }
            den = den * &factor;
        }
        term = term * &num / &den;
        sum = sum + &term;
    }
    Ok(sum)
}

/// Appell `F4` summed over `m1 + m2 <= M` with every parameter evaluated
/// at `eps`.
pub fn direct_appell_value<T: Number>(
    upper: &[LinearParam<T>; 2],
    lower: &[LinearParam<T>; 2],
    x1: &T,
    x2: &T,
    eps: &T,
    m_max: usize,
) -> Result<T> {
    let [a1, a2] = [upper[0].at(eps), upper[1].at(eps)];
    let [b1, b2] = [lower[0].at(eps), lower[1].at(eps)];
    // row[m1] = x1^m1 / ((b1)_m1 m1!), and likewise for the second variable
    let marginal = |b: &T, x: &T, index: usize| -> Result<Vec<T>> {
        let mut out = vec![T::one()];
        for m in 0..m_max {
            let factor = b.clone() + T::from_usize(m);
            if factor.is_zero() {
                return Err(Error::PoleAtEps { index, m });
            }
            let next = out[m].clone() * x / (factor * T::from_usize(m + 1));
            out.push(next);
        }
        Ok(out)
    };
    let first = marginal(&b1, x1, 0)?;
    let second = marginal(&b2, x2, 1)?;
    let mut sum = T::zero();
    let mut numerator = T::one();
    for s in 0..=m_max {
        let mut diagonal = T::zero();
        for m1 in 0..=s {
            diagonal = diagonal + first[m1].clone() * &second[s - m1];
        }
        sum = sum + numerator.clone() * &diagonal;
        let shift = T::from_usize(s);
        numerator = numerator * &(a1.clone() + &shift) * &(a2.clone() + &shift);
    }
    Ok(sum)
}

/// Exact weights `w` with `f^(order)(0) ~ sum_i w_i f(x_i)` for unit-spaced
/// integer nodes `x_i` (multiply by `h^-order` for step `h`).
pub fn fornberg_weights(order: usize, nodes: &[i64]) -> Result<Vec<Rational>> {
    let n = nodes.len();
    if order >= n {
        return Err(Error::OutOfRange(format!(
            "derivative order {order} needs more than {n} nodes"
        )));
    }
    let x: Vec<Rational> = nodes.iter().map(|&v| Rational::from(v)).collect();
    let mut c = vec![vec![Rational::new(); n]; order + 1];
    c[0][0] = Rational::from(1);
    let mut c1 = Rational::from(1);
    let mut c4 = x[0].clone();
    for i in 1..n {
        let top = i.min(order);
        let mut c2 = Rational::from(1);
        let c5 = c4;
        c4 = x[i].clone();
        for j in 0..i {
            let c3 = Rational::from(&x[i] - &x[j]);
            if c3 == 0 {
                return Err(Error::InvalidRequest("finite-difference nodes must be distinct".into()));
            }
            c2 *= &c3;
            if j == i - 1 {
                for k in (1..=top).rev() {
                    let v = Rational::from(k as u64) * &c[k - 1][i - 1] - Rational::from(&c5 * &c[k][i - 1]);
                    c[k][i] = Rational::from(&c1 * &v) / &c2;
                }
                c[0][i] = -Rational::from(&c1 * &c5) * &c[0][i - 1] / &c2;
            }
            for k in (1..=top).rev() {
                let v = Rational::from(&c4 * &c[k][j]) - Rational::from(k as u64) * &c[k - 1][j];
                c[k][j] = v / &c3;
            }
            c[0][j] = Rational::from(&c4 * &c[0][j]) / &c3;
        }
        c1 = c2;
    }
    Ok(c.swap_remove(order))
}

/// Central-difference estimates of `C_n = f^(n)(0) / n!`, `n = 0..=n_max`,
/// all taken from the `2 n_max + 1` points `-n_max h ..= n_max h`. Rounding
/// is amplified by `h^-n`, so accuracy falls off with the order.
pub fn finite_difference_coeffs(
    req: &ExpansionRequest<FloatScalar>,
    config: &OracleConfig,
) -> Result<Vec<FloatScalar>> {
    config.validate()?;
    if req
        .lower
        .iter()
        .any(|b| !b.slope.is_zero() && b.constant.to_integer().is_some_and(|k| k <= 0))
    {
        return Err(Error::InvalidRequest(
            "finite differences need regular lower parameters".into(),
        ));
    }
    with_precision(config.precision, || {
        let h_exact = Rational::from_f64(config.h)
            .ok_or_else(|| Error::InvalidRequest("finite-difference step is not finite".into()))?;
        let h = FloatScalar::from_rational(&h_exact);
        let n_max = req.n_max as i64;
        let mut values = Vec::with_capacity(2 * req.n_max + 1);
        for j in -n_max..=n_max {
            let eps = h.clone() * &FloatScalar::from_i64(j);
            values.push(direct_series_value(&req.upper, &req.lower, &req.z, &eps, config.m)?);
        }
        let nodes: Vec<i64> = (-n_max..=n_max).collect();
        let mut out = Vec::with_capacity(req.n_max + 1);
        let mut h_pow = FloatScalar::one();
        let mut factorial = Integer::from(1);
        for n in 0..=n_max {
            if n > 0 {
                h_pow = h_pow * &h;
                factorial *= n;
            }
            let weights = fornberg_weights(n as usize, &nodes)?;
            let mut acc = FloatScalar::zero();
            for (node, w) in nodes.iter().zip(&weights) {
                if *w != 0 {
                    acc = acc + values[(node + n_max) as usize].clone() * &FloatScalar::from_rational(w);
                }
            }
            out.push(acc / &h_pow / &FloatScalar::from_integer(&factorial));
        }
        Ok(out)
    })
}

fn require_inside_unit_disk<T: Number>(z: &T, what: &str) -> Result<()> {
    if z.cmp_abs_one() != std::cmp::Ordering::Less {
        return Err(Error::DivergentSeries(format!("{what} series needs |z| < 1")));
    }
    Ok(())
}

/// Partial sum `sum_{m=1}^{M} z^m / m^s` of the polylogarithm.
pub fn polylog<T: Number>(s: u32, z: &T, m_max: usize) -> Result<T> {
    if s < 2 {
        return Err(Error::InvalidRequest("polylog order must be at least 2".into()));
    }
    require_inside_unit_disk(z, "polylogarithm")?;
    let mut sum = T::zero();
    let mut zm = T::one();
    for m in 1..=m_max {
        zm = zm * z;
        sum = sum + zm.clone() / T::from_usize(m).powi(s as usize);
    }
    Ok(sum)
}

/// Partial sum `sum_{m=2}^{M} z^m H_{m-1} / m^2` of Nielsen's `S_{1,2}`.
pub fn nielsen_s12<T: Number>(z: &T, m_max: usize) -> Result<T> {
    require_inside_unit_disk(z, "Nielsen polylogarithm")?;
    let mut sum = T::zero();
    let mut zm = z.clone();
    let mut h = Rational::new();
    for m in 2..=m_max {
        zm = zm * z;
        h += Rational::from((1, m as u64 - 1));
        sum = sum + zm.clone() * &T::from_rational(&h) / T::from_usize(m * m);
    }
    Ok(sum)
}

/// `C_2` and `C_3` of `2F1(a1 eps, a2 eps; 1 + b1 eps; z)` from their
/// polylogarithm representations:
/// `C_2 = a1 a2 Li2(z)`, `C_3 = a1 a2 (-b1 Li3(z) + (a1 + a2 - b1) S12(z))`.
pub fn gauss_c2_c3_reference<T: Number>(a1: &T, a2: &T, b1: &T, z: &T, m_max: usize) -> Result<(T, T)> {
    let prefactor = a1.clone() * a2;
    let li2 = polylog(2, z, m_max)?;
    let li3 = polylog(3, z, m_max)?;
    let s12 = nielsen_s12(z, m_max)?;
    let c2 = prefactor.clone() * &li2;
    let mix = a1.clone() + a2 - b1;
    let c3 = prefactor * &(mix * &s12 - b1.clone() * &li3);
    Ok((c2, c3))
}

fn binomial(n: usize, k: usize) -> Integer {
    Integer::from(Integer::binomial_u(n as u32, k as u32))
}

/// `sum_{l=1}^{m} (-1)^{l-1} C(m, l) / l^2`.
fn alternating_inverse_squares(m: usize) -> Rational {
    let mut sum = Rational::new();
    for l in 1..=m {
        let term = Rational::from((binomial(m, l), Integer::from(l * l)));
        if l % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Bracketed weight of `C(m1+m2, m1)^2 x1^m1 x2^m2` in `C_n` of
/// `F4(1, 1+eps; 1+eps, 1+eps; x1, x2)`.
fn appell_bracket(n: usize, m1: usize, m2: usize) -> Rational {
    let m = m1 + m2;
    match n {
        0 => Rational::from(1),
        1 => harmonic(m).as_rational().clone() - harmonic(m1).as_rational() - harmonic(m2).as_rational(),
        _ => {
            let (h, h1, h2) = (
                harmonic(m).as_rational().clone(),
                harmonic(m1).as_rational().clone(),
                harmonic(m2).as_rational().clone(),
            );
            let mut nested = Rational::new();
            for l in 2..=m {
                nested += harmonic(l - 1).as_rational().clone() / Rational::from(l as u64);
            }
            nested - h * (h1.clone() + &h2)
                + alternating_inverse_squares(m1)
                + h1 * h2
                + alternating_inverse_squares(m2)
        }
    }
}

/// `C_0`, `C_1` or `C_2` of `F4(1, 1+eps; 1+eps, 1+eps; x1, x2)` summed over
/// `m1 + m2 <= M` from the explicit harmonic-number double sums.
pub fn appell_c_reference<T: Number>(n: usize, x1: &T, x2: &T, m_max: usize) -> Result<T> {
    if n > 2 {
        return Err(Error::OutOfRange(format!("Appell reference covers C_0..C_2, not C_{n}")));
    }
    let mut sum = T::zero();
    let mut x1_pow = T::one();
    for m1 in 0..=m_max {
        let mut x2_pow = T::one();
        for m2 in 0..=(m_max - m1) {
            let b = binomial(m1 + m2, m1);
            let weight = Rational::from(b.square()) * appell_bracket(n, m1, m2);
            if weight != 0 {
                sum = sum + T::from_rational(&weight) * &x1_pow * &x2_pow;
            }
            x2_pow = x2_pow * x2;
        }
        x1_pow = x1_pow * x1;
    }
    Ok(sum)
}

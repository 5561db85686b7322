use rug::Integer;

use crate::{Error, Result};

/// Signed Stirling numbers of the first kind `s(n, k)` for `0 <= k <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingTable {
    rows: Vec<Vec<Integer>>,
}

impl StirlingTable {
    /// Builds the triangle with `s(n+1, k) = s(n, k-1) - n s(n, k)`.
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<Integer>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![Integer::from(1)]);
        for n in 0..n_max {
            let prev = &rows[n];
            let mut next = vec![Integer::new(); n + 2];
            for (k, slot) in next.iter_mut().enumerate().skip(1) {
                let mut v = prev[k - 1].clone();
                if k <= n {
                    v -= Integer::from(&prev[k] * n as u64);
                }
                *slot = v;
            }
            rows.push(next);
        }
        StirlingTable { rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, k: usize) -> Result<&Integer> {
        if n > self.n_max() || k > n {
            return Err(Error::OutOfRange(format!(
                "s({n}, {k}) outside table with n_max = {}",
                self.n_max()
            )));
        }
        Ok(&self.rows[n][k])
    }
}

/// `s(n, k)` looked up in `table`.
pub fn stirling(n: usize, k: usize, table: &StirlingTable) -> Result<Integer> {
    table.get(n, k).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pochhammer::harmonic;
    use rug::Rational;

    fn factorial(n: u32) -> Integer {
        Integer::from(Integer::factorial(n))
    }

    #[test]
    fn boundaries() {
        let t = StirlingTable::new(12);
        assert_eq!(*t.get(0, 0).unwrap(), 1);
        for n in 1..=12 {
            assert_eq!(*t.get(n, n).unwrap(), 1);
            assert_eq!(*t.get(n, 0).unwrap(), 0);
        }
    }

    #[test]
    fn small_values() {
        let t = StirlingTable::new(6);
        assert_eq!(stirling(3, 2, &t).unwrap(), -3);
        assert_eq!(stirling(4, 2, &t).unwrap(), 11);
        assert_eq!(stirling(5, 3, &t).unwrap(), 35);
        assert_eq!(stirling(6, 1, &t).unwrap(), -120);
    }

    #[test]
    fn out_of_range() {
        let t = StirlingTable::new(4);
        assert!(matches!(stirling(5, 1, &t), Err(Error::OutOfRange(_))));
        assert!(matches!(stirling(2, 3, &t), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn generating_function() {
        // [ln(1+x)]^2 = x^2 - x^3 + 11/12 x^4 - ...; coefficient of x^n is 2! s(n,2)/n!
        let t = StirlingTable::new(4);
        let coeff = |n: u32| Rational::from((Integer::from(2) * t.get(n as usize, 2).unwrap(), factorial(n)));
        assert_eq!(coeff(2), 1);
        assert_eq!(coeff(3), -1);
        assert_eq!(coeff(4), Rational::from((11, 12)));
    }

    #[test]
    fn first_and_second_columns() {
        let t = StirlingTable::new(15);
        for m in 1..=15usize {
            let sign = if m % 2 == 1 { 1 } else { -1 };
            assert_eq!(*t.get(m, 1).unwrap(), factorial(m as u32 - 1) * sign);
            if m < 2 {
                continue;
            }
            // s(m,2) = (-1)^m (m-1)! H_{m-1}
            let expect = Rational::from(factorial(m as u32 - 1)) * &harmonic(m - 1).0 * -sign;
            assert_eq!(Rational::from(t.get(m, 2).unwrap().clone()), expect);
        }
    }

    #[test]
    fn triangular_recurrence_holds() {
        let t = StirlingTable::new(20);
        for n in 1..20 {
            for k in 1..=n {
                let rhs = t.get(n, k - 1).unwrap() - Integer::from(t.get(n, k).unwrap() * n as u64);
                assert_eq!(*t.get(n + 1, k).unwrap(), rhs);
            }
        }
    }
}

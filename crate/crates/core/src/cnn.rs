//! The integer weights `c_{n,N}(k)` that rewrite a sum of `N + 1` terms as a
//! weighted sum of `min(n, N) + 1` terms.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use crate::combinat::binomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CnNTable {
    pub n: usize,
    /// Upper summation limit `N`.
    pub upper: usize,
    /// Entry `k` is `c_{n,N}(k)` for `k = 0..=min(n, N)`.
    pub values: Vec<Rational>,
}

impl CnNTable {
    pub fn get(&self, k: usize) -> Option<&Rational> {
        self.values.get(k)
    }

    pub fn row_sum(&self) -> Rational {
        self.values.iter().sum()
    }
}

/// `c_{n,N}(k) = sum_{m=k}^{n∧N} C(N+1, m+1) C(m, k) (-1)^(m-k)`.
pub fn cnn_table(n: usize, upper: usize) -> CnNTable {
    let top = n.min(upper);
    let values = (0..=top)
        .map(|k| {
            (k..=top)
                .map(|m| binomial(upper + 1, (m + 1) as i64) * binomial(m, k as i64) * Rational::sign_pow(m - k))
                .sum()
        })
        .collect();
    CnNTable { n, upper, values }
}

type TableCache = RwLock<HashMap<(usize, usize), Arc<CnNTable>>>;

static CNN_CACHE: LazyLock<TableCache> = LazyLock::new(Default::default);

/// Memoized [`cnn_table`], keyed by `(n, N)`.
pub fn cnn_cached(n: usize, upper: usize) -> Arc<CnNTable> {
    if let Some(t) = CNN_CACHE.read().expect("cnn cache poisoned").get(&(n, upper)) {
        return Arc::clone(t);
    }
    let table = Arc::new(cnn_table(n, upper));
    CNN_CACHE
        .write()
        .expect("cnn cache poisoned")
        .entry((n, upper))
        .or_insert(table)
        .clone()
}

/// Alternating closed form for `N > n`:
/// `1 + (-1)^(n-k) sum_{i=0}^{N-n-1} C(n+1+i, k) C(n-k+i, n-k)`.
pub fn cnn_alternating(n: usize, upper: usize, k: usize) -> Result<Rational> {
    if upper <= n {
        return Err(Error::Domain(format!(
            "alternating form needs N > n (got n = {n}, N = {upper})"
        )));
    }
    if k > n {
        return Err(Error::IndexOrder { m: k, n });
    }
    let tail: Rational = (0..upper - n)
        .map(|i| binomial(n + 1 + i, k as i64) * binomial(n - k + i, (n - k) as i64))
        .sum();
    Ok(Rational::one() + Rational::sign_pow(n - k) * tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn table_examples() {
        assert_eq!(cnn_table(2, 3).values, ints(&[2, -2, 4]));
        assert_eq!(cnn_table(5, 3).values, ints(&[1, 1, 1, 1]));
        assert_eq!(cnn_table(0, 0).values, ints(&[1]));
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(cnn_alternating(2, 3, 0).unwrap(), Rational::integer(2));
        assert_eq!(cnn_alternating(2, 3, 1).unwrap(), Rational::integer(-2));
        assert_eq!(cnn_alternating(2, 3, 2).unwrap(), Rational::integer(4));
        assert!(matches!(cnn_alternating(3, 3, 0), Err(Error::Domain(_))));
        assert!(matches!(cnn_alternating(3, 2, 0), Err(Error::Domain(_))));
        assert!(cnn_alternating(2, 5, 3).is_err());
    }

    #[test]
    fn row_sums_and_ones() {
        for n in 0..=8 {
            for upper in 0..=20 {
                let t = cnn_table(n, upper);
                assert_eq!(t.row_sum(), Rational::from(upper + 1));
                assert!(t.values.iter().all(Rational::is_integer));
                if upper <= n {
                    assert!(t.values.iter().all(Rational::is_one));
                }
            }
        }
    }

    #[test]
    fn alternating_matches_table() {
        for upper in 1..=20 {
            for n in 0..upper {
                let t = cnn_table(n, upper);
                for k in 0..=n {
                    assert_eq!(cnn_alternating(n, upper, k).unwrap(), t.values[k]);
                    // sign alternates
                    let expected_sign_positive = (n - k) % 2 == 0;
                    assert_eq!(
                        t.values[k].is_positive(),
                        expected_sign_positive,
                        "n={n} N={upper} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn cache_returns_same_table() {
        let a = cnn_cached(4, 9);
        let b = cnn_cached(4, 9);
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(*a, cnn_table(4, 9));
    }
}

//! Classical combinatorial kernel: factorials, binomials, Stirling numbers of
//! both kinds, Stirling polynomials and Bell polynomials.
//!
//! Stirling numbers come from memoized triangular recurrences shared across
//! threads behind a lock. Rows only ever get appended, so a reader either sees
//! a finished row or takes the write lock and builds it.

use std::sync::{LazyLock, RwLock};

use num::bigint::BigInt;
use num::{One, Zero};

use crate::rational::Rational;

pub fn factorial(n: usize) -> Rational {
    Rational::from(factorial_int(n))
}

fn factorial_int(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: i64) -> Rational {
    Rational::from(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: usize, k: i64) -> BigInt {
    if k < 0 || k as usize > n {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `<x>_n = x(x+1)...(x+n-1)`, with `<x>_0 = 1`.
pub fn rising_factorial(x: &Rational, n: usize) -> Rational {
    (0..n).map(|i| x + Rational::from(i)).product()
}

/// `(x)_n = x(x-1)...(x-n+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: &Rational, n: usize) -> Rational {
    (0..n).map(|i| x - Rational::from(i)).product()
}

/// `(n-1)!!` style double factorial: `n (n-2) (n-4) ...`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= BigInt::from(i);
        i -= 2;
    }
    Rational::from(acc)
}

static STIRLING2: LazyLock<RwLock<Vec<Vec<BigInt>>>> = LazyLock::new(|| RwLock::new(vec![vec![BigInt::one()]]));
static STIRLING1: LazyLock<RwLock<Vec<Vec<BigInt>>>> = LazyLock::new(|| RwLock::new(vec![vec![BigInt::one()]]));

/// Appends triangle rows through `n` using `next(prev_row, row_index)`.
fn triangle_entry(
    table: &RwLock<Vec<Vec<BigInt>>>,
    n: usize,
    k: usize,
    next: fn(&[BigInt], usize) -> Vec<BigInt>,
) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    {
        let rows = table.read().expect("stirling table poisoned");
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = table.write().expect("stirling table poisoned");
    while rows.len() <= n {
        let i = rows.len();
        let row = next(&rows[i - 1], i);
        rows.push(row);
    }
    rows[n][k].clone()
}

// S(i, k) = k S(i-1, k) + S(i-1, k-1)
fn stirling2_row(prev: &[BigInt], i: usize) -> Vec<BigInt> {
    (0..=i)
        .map(|k| {
            let stay = prev.get(k).map(|s| s * BigInt::from(k)).unwrap_or_default();
            let join = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
            stay + join
        })
        .collect()
}

// s(i, k) = s(i-1, k-1) - (i-1) s(i-1, k)
fn stirling1_row(prev: &[BigInt], i: usize) -> Vec<BigInt> {
    (0..=i)
        .map(|k| {
            let down = if k > 0 { prev[k - 1].clone() } else { BigInt::zero() };
            let stay = prev.get(k).map(|s| s * BigInt::from(i - 1)).unwrap_or_default();
            down - stay
        })
        .collect()
}

/// Stirling number of the second kind `S(n, m)`; zero when `m > n`.
pub fn stirling2(n: usize, m: usize) -> Rational {
    Rational::from(triangle_entry(&STIRLING2, n, m, stirling2_row))
}

/// Signed Stirling number of the first kind `s(n, k)`, the coefficient of
/// `x^k` in `(x)_n`; zero when `k > n`.
pub fn stirling1(n: usize, k: usize) -> Rational {
    Rational::from(triangle_entry(&STIRLING1, n, k, stirling1_row))
}

/// `S(n, m)` from the m-th forward difference of `x^n` at zero:
/// `(1/m!) sum_k C(m,k) (-1)^(m-k) k^n`. Independent of the memoized triangle.
pub fn stirling2_alternating(n: usize, m: usize) -> Rational {
    stirling2_poly(n, m, &Rational::zero())
}

/// Stirling polynomial `S(n, m; x) = Δ^m x^n / m!` evaluated at `x`.
pub fn stirling2_poly(n: usize, m: usize, x: &Rational) -> Rational {
    if m > n {
        return Rational::zero();
    }
    let sum: Rational = (0..=m)
        .map(|k| binomial(m, k as i64) * Rational::sign_pow(m - k) * (x + Rational::from(k)).pow(n))
        .sum();
    sum / factorial(m)
}

/// Bell polynomial `B_n(x) = sum_j S(n, j) x^j` (Dobiński's finite form).
pub fn bell_poly(n: usize, x: &Rational) -> Rational {
    (0..=n).map(|j| stirling2(n, j) * x.pow(j)).sum()
}

/// Every vector of `parts` non-negative integers summing to `total`, in
/// lexicographic order. Zero parts yield the single empty vector iff `total == 0`.
pub fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=rest {
            cur.push(a);
            go(rest - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// Multinomial coefficient `n! / (a_1! ... a_k!)` where `n = sum a_i`.
pub fn multinomial(parts: &[usize]) -> Rational {
    let n: usize = parts.iter().sum();
    let den = parts.iter().fold(BigInt::one(), |acc, &a| acc * factorial_int(a));
    Rational::from(factorial_int(n) / den)
}

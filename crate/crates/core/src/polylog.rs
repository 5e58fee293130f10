//! Negative-integer-order polylogarithms `Li_{-n}(q) = sum_{j>=1} j^n q^j` at
//! rational `0 < q < 1`, and their multinomial convolutions.
//!
//! `Li_{-n}` is a rational function of `q`; values come from the finite form
//! `sum_{j>=0} j^n q^j = sum_r S(n,r) r! q^r / (1-q)^(r+1)`, never from summing
//! the series.

use crate::combinat::{factorial, multinomial, stirling2, weak_compositions};
use crate::distributions::{DistributionSpec, SumMoments};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

fn check_q(q: &Rational) -> Result<()> {
    if !q.is_positive() || *q >= Rational::one() {
        return Err(Error::InvalidParameter(format!("polylog needs 0 < q < 1, got {q}")));
    }
    Ok(())
}

/// `Li_{-n}(q)`; `Li_0(q) = q / (1 - q)`.
pub fn li_neg(n: usize, q: &Rational) -> Result<Rational> {
    check_q(q)?;
    let p = Rational::one() - q;
    if n == 0 {
        return Ok(q / p);
    }
    Ok((1..=n)
        .map(|r| stirling2(n, r) * factorial(r) * q.pow(r) / p.pow(r + 1))
        .sum())
}

/// `Li_{-n}(q)` as `numer(q) / (1 - q)^denom_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolylogRationalFunction {
    pub numer: Polynomial,
    pub denom_power: usize,
}

impl PolylogRationalFunction {
    pub fn eval(&self, q: &Rational) -> Rational {
        self.numer.eval(q) / (Rational::one() - q).pow(self.denom_power)
    }
}

/// Closed form of `Li_{-n}` over the common denominator `(1 - q)^(n + 1)`
/// (`(1 - q)` for `n = 0`).
pub fn li_neg_rational_function(n: usize) -> PolylogRationalFunction {
    if n == 0 {
        return PolylogRationalFunction {
            numer: Polynomial::monomial(1),
            denom_power: 1,
        };
    }
    let one_minus_q = Polynomial::new(vec![Rational::one(), -Rational::one()]);
    let pow = |e: usize| (0..e).fold(Polynomial::constant(Rational::one()), |acc, _| &acc * &one_minus_q);
    let numer = (1..=n).fold(Polynomial::zero(), |acc, r| {
        acc + (Polynomial::monomial(r) * pow(n - r)).scale(&(stirling2(n, r) * factorial(r)))
    });
    PolylogRationalFunction {
        numer,
        denom_power: n + 1,
    }
}

/// Multinomial convolution
/// `Li^{⋆k}_{-n}(q) = sum_{n_1+...+n_k=n} n!/(n_1!...n_k!) prod_i Li_{-n_i}(q)`,
/// with `Li^{⋆0}_{-n} = δ_{n0}`.
pub fn li_conv_direct(n: usize, k: usize, q: &Rational) -> Result<Rational> {
    check_q(q)?;
    let values: Vec<Rational> = (0..=n).map(|i| li_neg(i, q)).collect::<Result<_>>()?;
    Ok(weak_compositions(n, k)
        .iter()
        .map(|parts| multinomial(parts) * parts.iter().map(|&i| values[i].clone()).product::<Rational>())
        .sum())
}

/// The same convolution through geometric moments: `(q/p)^k E(S_k + k)^n`
/// for `S_k` a sum of `k` geometric(`q`) variables, `p = 1 - q`.
pub fn li_conv_prob(n: usize, k: usize, q: &Rational) -> Result<Rational> {
    check_q(q)?;
    let p = Rational::one() - q;
    let mut sums = SumMoments::new(DistributionSpec::Geometric(q.clone()));
    Ok((q / p).pow(k) * sums.shifted(k, n, &Rational::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::moment;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn li_neg_examples() {
        assert_eq!(li_neg(1, &q(1, 2)).unwrap(), q(2, 1));
        assert_eq!(li_neg(2, &q(1, 2)).unwrap(), q(6, 1));
        assert_eq!(li_neg(0, &q(1, 3)).unwrap(), q(1, 2));
        assert!(li_neg(2, &q(1, 1)).is_err());
        assert!(li_neg(2, &q(0, 1)).is_err());
        assert!(li_neg(2, &q(-1, 2)).is_err());
    }

    #[test]
    fn li_neg_matches_partial_sums() {
        let qq = q(1, 4);
        for n in 0..=5 {
            let partial: Rational = (1..150usize).map(|j| Rational::from(j).pow(n) * qq.pow(j)).sum();
            let gap = (li_neg(n, &qq).unwrap() - partial).to_f64();
            assert!((0.0..1e-70).contains(&gap), "n={n}");
        }
    }

    #[test]
    fn rational_function_agrees_with_values() {
        for n in 0..=6 {
            let f = li_neg_rational_function(n);
            for qq in [q(1, 2), q(1, 3), q(3, 4)] {
                assert_eq!(f.eval(&qq), li_neg(n, &qq).unwrap());
            }
        }
    }

    /// `Li_{-n} = q d/dq Li_{-(n-1)}` on the closed forms, via the quotient rule:
    /// d/dq [P / (1-q)^a] = (P'(1-q) + a P) / (1-q)^(a+1).
    #[test]
    fn derivative_recurrence() {
        let one_minus_q = Polynomial::new(vec![Rational::one(), -Rational::one()]);
        for n in 1..=5 {
            let prev = li_neg_rational_function(n - 1);
            let a = Rational::from(prev.denom_power);
            let deriv_numer = &(&prev.numer.derivative() * &one_minus_q) + &prev.numer.scale(&a);
            let lhs = &Polynomial::monomial(1) * &deriv_numer;
            let cur = li_neg_rational_function(n);
            assert_eq!(cur.denom_power, prev.denom_power + 1);
            assert_eq!(lhs, cur.numer, "n={n}");
        }
    }

    #[test]
    fn conv_examples() {
        let half = q(1, 2);
        for n in 0..5 {
            assert_eq!(li_conv_direct(n, 1, &half).unwrap(), li_neg(n, &half).unwrap());
        }
        assert_eq!(li_conv_direct(0, 0, &half).unwrap(), q(1, 1));
        assert_eq!(li_conv_direct(3, 0, &half).unwrap(), q(0, 1));
        assert_eq!(li_conv_direct(2, 2, &half).unwrap(), q(20, 1));
        assert_eq!(li_conv_prob(2, 1, &half).unwrap(), q(6, 1));
        assert_eq!(li_conv_prob(0, 0, &half).unwrap(), q(1, 1));
        assert_eq!(li_conv_prob(2, 0, &half).unwrap(), q(0, 1));
        assert_eq!(li_conv_prob(2, 2, &half).unwrap(), q(20, 1));
        assert!(li_conv_prob(2, 2, &q(3, 2)).is_err());
    }

    #[test]
    fn direct_equals_probabilistic() {
        for qq in [q(1, 2), q(1, 3), q(3, 4)] {
            for n in 0..=5 {
                for k in 0..=4 {
                    let d = li_conv_direct(n, k, &qq).unwrap();
                    assert_eq!(d, li_conv_prob(n, k, &qq).unwrap(), "n={n} k={k} q={qq}");
                }
            }
        }
    }

    #[test]
    fn geometric_moment_link() {
        for qq in [q(1, 2), q(2, 5)] {
            let d = DistributionSpec::Geometric(qq.clone());
            for n in 1..=6 {
                assert_eq!(moment(&d, n), (Rational::one() - &qq) * li_neg(n, &qq).unwrap());
            }
        }
    }
}

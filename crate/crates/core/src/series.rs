//! Truncated power series with rational coefficients.
//!
//! Storage is the ordinary coefficient `a_j` of `z^j`. Exponential generating
//! function coefficients `u_n = n! a_n` are produced only by
//! [`EGFSeries::egf_coefficient`].

use crate::combinat::factorial;
use crate::distributions::{DistributionSpec, MomentSequence};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// `sum_{j=0}^{order} a_j z^j`; always holds exactly `order + 1` coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EGFSeries {
    coeffs: Vec<Rational>,
}

impl EGFSeries {
    /// Pads with zeros or truncates to `order + 1` coefficients.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<Rational>) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        EGFSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        EGFSeries::from_coeffs(order, Vec::new())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        EGFSeries::from_coeffs(order, vec![c])
    }

    pub fn one(order: usize) -> Self {
        EGFSeries::constant(order, Rational::one())
    }

    /// `e^z`.
    pub fn exp(order: usize) -> Self {
        EGFSeries::exp_scaled(&Rational::one(), order)
    }

    /// `e^{xz}`: coefficients `x^j / j!`.
    pub fn exp_scaled(x: &Rational, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        for j in 0..=order {
            if j > 0 {
                term = term * x / Rational::from(j);
            }
            coeffs.push(term.clone());
        }
        EGFSeries { coeffs }
    }

    /// Series whose EGF coefficients are `dist`'s raw moments:
    /// `a_n = E[Y^n] / n!`, i.e. the expansion of `E e^{zY}`.
    pub fn from_moments(dist: &DistributionSpec, order: usize) -> Self {
        let mut moments = MomentSequence::new(dist.clone());
        let coeffs = (0..=order).map(|n| moments.get(n) / factorial(n)).collect();
        EGFSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    fn check_order(&self, other: &EGFSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &EGFSeries) -> Result<EGFSeries> {
        self.check_order(other)?;
        Ok(EGFSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &EGFSeries) -> Result<EGFSeries> {
        self.check_order(other)?;
        Ok(EGFSeries {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Subtracts `c` from the constant term.
    pub fn minus_constant(&self, c: &Rational) -> EGFSeries {
        let mut out = self.clone();
        out.coeffs[0] -= c;
        out
    }

    pub fn scale(&self, c: &Rational) -> EGFSeries {
        EGFSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &EGFSeries) -> Result<EGFSeries> {
        self.check_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &EGFSeries) -> EGFSeries {
        let order = self.order();
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(order + 1 - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        EGFSeries { coeffs }
    }

    /// `self^m` by binary exponentiation; `self^0` is the constant 1.
    pub fn pow(&self, m: usize) -> EGFSeries {
        let mut acc = EGFSeries::one(self.order());
        let mut base = self.clone();
        let mut e = m;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// `h` with `h * divisor = self` through the truncation order.
    pub fn div(&self, divisor: &EGFSeries) -> Result<EGFSeries> {
        self.check_order(divisor)?;
        let d0 = divisor.coeffs[0].clone();
        if d0.is_zero() {
            return Err(Error::NonInvertible);
        }
        let inv_d0 = d0.recip();
        let mut h: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for n in 0..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            for (j, hj) in h.iter().enumerate() {
                acc -= hj * &divisor.coeffs[n - j];
            }
            h.push(acc * &inv_d0);
        }
        Ok(EGFSeries { coeffs: h })
    }

    /// Divides by `z`, dropping the (necessarily zero) constant term.
    /// The result has order one less than `self`.
    pub fn divided_by_z(&self) -> Result<EGFSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter(
                "dividing by z needs a zero constant term".into(),
            ));
        }
        if self.order() == 0 {
            return Err(Error::InvalidParameter(
                "dividing an order-0 series by z leaves no coefficients".into(),
            ));
        }
        Ok(EGFSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `n! a_n`, the n-th exponential generating function coefficient.
    pub fn egf_coefficient(&self, n: usize) -> Result<Rational> {
        match self.coeffs.get(n) {
            Some(a) => Ok(factorial(n) * a),
            None => Err(Error::BeyondOrder { n, order: self.order() }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::stirling2;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn exp_coefficients() {
        assert_eq!(EGFSeries::exp(2).coeffs(), &[q(1, 1), q(1, 1), q(1, 2)]);
        assert_eq!(EGFSeries::exp(0).coeffs(), &[q(1, 1)]);
        assert_eq!(EGFSeries::exp(4).coeff(4), &q(1, 24));
    }

    #[test]
    fn mul_examples() {
        let e = EGFSeries::exp(2);
        assert_eq!(e.mul(&e).unwrap().coeffs(), &ints(&[1, 2, 2])[..]);
        assert_eq!(e.mul(&EGFSeries::one(2)).unwrap(), e);
        let a = EGFSeries::from_coeffs(2, ints(&[1, 1]));
        let b = EGFSeries::from_coeffs(2, ints(&[1, -1]));
        assert_eq!(a.mul(&b).unwrap().coeffs(), &ints(&[1, 0, -1])[..]);
        assert_eq!(
            a.mul(&EGFSeries::one(3)),
            Err(Error::OrderMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn pow_examples() {
        let em1 = EGFSeries::exp(3).minus_constant(&Rational::one());
        assert_eq!(em1.pow(2).coeffs(), &ints(&[0, 0, 1, 1])[..]);
        assert_eq!(em1.pow(0), EGFSeries::one(3));
        assert_eq!(em1.pow(1), em1);
    }

    #[test]
    fn div_examples() {
        // (e^z - 1)/z at order 2 needs e^z through z^3.
        let d = EGFSeries::exp(3)
            .minus_constant(&Rational::one())
            .divided_by_z()
            .unwrap();
        let b = EGFSeries::one(2).div(&d).unwrap();
        assert_eq!(b.coeffs(), &[q(1, 1), q(-1, 2), q(1, 12)]);
        assert_eq!(b.egf_coefficient(2).unwrap(), q(1, 6));
        let e = EGFSeries::exp(5);
        assert_eq!(e.div(&e).unwrap(), EGFSeries::one(5));
        let z = EGFSeries::from_coeffs(3, ints(&[0, 1]));
        assert_eq!(
            e.div(&EGFSeries::from_coeffs(5, ints(&[0, 1]))),
            Err(Error::NonInvertible)
        );
        assert!(z.divided_by_z().is_ok());
    }

    #[test]
    fn egf_coefficient_examples() {
        let f = EGFSeries::exp(3)
            .minus_constant(&Rational::one())
            .pow(2)
            .scale(&q(1, 2));
        assert_eq!(f.egf_coefficient(3).unwrap(), q(3, 1));
        assert_eq!(EGFSeries::exp(5).egf_coefficient(5).unwrap(), q(1, 1));
        assert_eq!(
            EGFSeries::exp(2).egf_coefficient(3),
            Err(Error::BeyondOrder { n: 3, order: 2 })
        );
    }

    #[test]
    fn from_moments_examples() {
        let c = EGFSeries::from_moments(&DistributionSpec::Constant(Rational::one()), 3);
        assert_eq!(c, EGFSeries::exp(3));
        let e = EGFSeries::from_moments(&DistributionSpec::Exponential, 3);
        assert_eq!(e.coeffs(), &ints(&[1, 1, 1, 1])[..]);
        let u = EGFSeries::from_moments(&DistributionSpec::Uniform01, 2);
        assert_eq!(u.coeffs(), &[q(1, 1), q(1, 2), q(1, 6)]);
    }

    #[test]
    fn stirling_generating_function() {
        let order = 10;
        let em1 = EGFSeries::exp(order).minus_constant(&Rational::one());
        for m in 0..=order {
            let f = em1.pow(m).scale(&factorial(m).recip());
            for n in m..=order {
                assert_eq!(f.egf_coefficient(n).unwrap(), stirling2(n, m));
            }
        }
    }

    fn series_strategy(order: usize) -> impl Strategy<Value = EGFSeries> {
        proptest::collection::vec((-9i64..9, 1i64..5), order + 1)
            .prop_map(move |v| EGFSeries::from_coeffs(order, v.into_iter().map(|(n, d)| Rational::new(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn div_inverts_mul(
            (f, mut g) in (0usize..=12).prop_flat_map(|o| (series_strategy(o), series_strategy(o))),
            c0 in 1i64..7,
        ) {
            g.coeffs[0] = Rational::integer(c0);
            let prod = f.mul(&g).unwrap();
            prop_assert_eq!(prod.div(&g).unwrap(), f);
        }

        #[test]
        fn pow_adds_exponents(f in series_strategy(6), a in 0usize..4, b in 0usize..4) {
            prop_assert_eq!(f.pow(a + b), f.pow(a).mul(&f.pow(b)).unwrap());
        }
    }
}

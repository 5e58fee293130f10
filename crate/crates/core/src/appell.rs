//! Appell sequences `A_n(x)` with generating function `G(A(0), z) e^{xz}`,
//! represented by their seed series `G(A(0), z)`.

use crate::cnn::cnn_cached;
use crate::combinat::{binomial, factorial};
use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::EGFSeries;
use crate::sums::IdentityReport;

/// Seed series `G(A(0), z)`, truncated. Its constant term is never zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellSeed {
    name: String,
    g0: EGFSeries,
}

impl AppellSeed {
    pub fn new(name: impl Into<String>, g0: EGFSeries) -> Result<Self> {
        if g0.coeff(0).is_zero() {
            return Err(Error::NonInvertible);
        }
        Ok(AppellSeed { name: name.into(), g0 })
    }

    /// The identity element `I(x)`: seed 1, so `A_n(x) = x^n`.
    pub fn identity(order: usize) -> Self {
        AppellSeed {
            name: "identity".into(),
            g0: EGFSeries::one(order),
        }
    }

    /// Bernoulli polynomials: seed `z / (e^z - 1)`, built by inverting
    /// `(e^z - 1)/z`.
    pub fn bernoulli(order: usize) -> Self {
        let shifted = EGFSeries::exp(order + 1)
            .minus_constant(&Rational::one())
            .divided_by_z()
            .expect("e^z - 1 has zero constant term");
        let g0 = EGFSeries::one(order).div(&shifted).expect("unit constant term");
        AppellSeed {
            name: "bernoulli".into(),
            g0,
        }
    }

    /// Euler polynomials: seed `2 / (e^z + 1)`.
    pub fn euler(order: usize) -> Self {
        let denom = EGFSeries::exp(order).minus_constant(&-Rational::one());
        let g0 = EGFSeries::constant(order, Rational::integer(2))
            .div(&denom)
            .expect("constant term 2");
        AppellSeed {
            name: "euler".into(),
            g0,
        }
    }

    /// Probabilists' Hermite polynomials: seed `e^{-z^2/2}`.
    pub fn hermite(order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|j| {
                if j % 2 == 1 {
                    Rational::zero()
                } else {
                    Rational::new(-1, 2).pow(j / 2) / factorial(j / 2)
                }
            })
            .collect();
        AppellSeed {
            name: "hermite".into(),
            g0: EGFSeries::from_coeffs(order, coeffs),
        }
    }

    /// Parses `bernoulli`, `euler`, `hermite` or `moment:<dist>`.
    pub fn family(spec: &str, order: usize) -> Result<Self> {
        match spec.trim() {
            "bernoulli" => Ok(AppellSeed::bernoulli(order)),
            "euler" => Ok(AppellSeed::euler(order)),
            "hermite" => Ok(AppellSeed::hermite(order)),
            other => match other.strip_prefix("moment:") {
                Some(d) => Ok(appell_moment_link(&d.parse()?, order)),
                None => Err(Error::Parse(format!("unknown Appell family `{other}`"))),
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn g0(&self) -> &EGFSeries {
        &self.g0
    }

    pub fn order(&self) -> usize {
        self.g0.order()
    }

    /// `A_n(0) = n! [z^n] G(A(0), z)`.
    pub fn value_at_zero(&self, n: usize) -> Result<Rational> {
        self.g0.egf_coefficient(n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppellSequence {
    pub seed: AppellSeed,
    pub order: usize,
}

impl AppellSequence {
    pub fn new(seed: AppellSeed) -> Self {
        let order = seed.order();
        AppellSequence { seed, order }
    }

    /// `A_n(x)` as a polynomial: coefficient of `x^(n-k)` is `C(n,k) A_k(0)`.
    pub fn polynomial(&self, n: usize) -> Result<Polynomial> {
        if n > self.order {
            return Err(Error::BeyondOrder { n, order: self.order });
        }
        let mut coeffs = vec![Rational::zero(); n + 1];
        for k in 0..=n {
            coeffs[n - k] = binomial(n, k as i64) * self.seed.value_at_zero(k)?;
        }
        Ok(Polynomial::new(coeffs))
    }
}

/// `A_n(x) = sum_k C(n,k) A_k(0) x^(n-k)`.
pub fn appell_eval(seq: &AppellSequence, n: usize, x: &Rational) -> Result<Rational> {
    if n > seq.order {
        return Err(Error::BeyondOrder { n, order: seq.order });
    }
    (0..=n).try_fold(Rational::zero(), |acc, k| {
        Ok(acc + binomial(n, k as i64) * seq.seed.value_at_zero(k)? * x.pow(n - k))
    })
}

/// Binomial convolution: the seed of `A × C` is the product of seeds.
pub fn binomial_convolve(a: &AppellSeed, c: &AppellSeed) -> Result<AppellSeed> {
    let g0 = a.g0.mul(&c.g0)?;
    AppellSeed::new(format!("{}*{}", a.name, c.name), g0)
}

/// k-fold binomial convolution `A(k; x)`: seed raised to the k-th power,
/// `k = 0` giving the identity.
pub fn kfold(a: &AppellSeed, k: usize) -> AppellSeed {
    AppellSeed {
        name: format!("{}^{k}", a.name),
        g0: a.g0.pow(k),
    }
}

/// Sequence with `A_n(x) = E(x + Y)^n`: seed `E e^{zY}`.
pub fn appell_moment_link(dist: &DistributionSpec, order: usize) -> AppellSeed {
    AppellSeed {
        name: format!("moment:{dist}"),
        g0: EGFSeries::from_moments(dist, order),
    }
}

/// Compares `sum_{k=0}^N A_n(k; x)` with `sum_{k=0}^n c_{n,N}(k) A_n(k; x)` for
/// `N >= n`. The middle value is the difference form
/// `sum_m C(N+1, m+1) sum_j C(m,j) (-1)^(m-j) A_n(j; x)`.
pub fn theorem12_check(a: &AppellSeed, n: usize, upper: usize, x: &Rational) -> Result<IdentityReport> {
    if upper < n {
        return Err(Error::Domain(format!("needs N >= n (got n = {n}, N = {upper})")));
    }
    if n > a.order() {
        return Err(Error::BeyondOrder { n, order: a.order() });
    }
    let values: Vec<Rational> = (0..=upper)
        .map(|k| appell_eval(&AppellSequence::new(kfold(a, k)), n, x))
        .collect::<Result<_>>()?;
    let lhs: Rational = values.iter().sum();
    let middle: Rational = (0..=n)
        .map(|m| {
            let diff: Rational = (0..=m)
                .map(|j| binomial(m, j as i64) * Rational::sign_pow(m - j) * &values[j])
                .sum();
            binomial(upper + 1, (m + 1) as i64) * diff
        })
        .sum();
    let table = cnn_cached(n, upper);
    let rhs: Rational = table.values.iter().zip(&values).map(|(c, v)| c * v).sum();
    Ok(IdentityReport::new(
        "theorem12",
        vec![
            ("family".into(), a.name.clone()),
            ("n".into(), n.to_string()),
            ("N".into(), upper.to_string()),
            ("x".into(), x.to_string()),
        ],
        lhs,
        middle,
        rhs,
    ))
}

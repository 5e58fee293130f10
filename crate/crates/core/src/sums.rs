//! Generalized sums of powers over arithmetic progressions driven by a random
//! step `Y`, and the three-way identity checks built on them.
//!
//! Every identity is reported with all three members so a mismatch shows which
//! route diverged.

use crate::appell::{appell_eval, AppellSeed, AppellSequence};
use crate::cnn::cnn_cached;
use crate::combinat::{bell_poly, binomial, factorial, falling_factorial, rising_factorial, stirling2_poly};
use crate::distributions::{DistributionSpec, SumMoments};
use crate::error::{Error, Result};
use crate::gen_stirling::{sy, sy_closed_geometric_shifted, sy_closed_poisson};
use crate::poly::Polynomial;
use crate::polylog::li_conv_direct;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub params: Vec<(String, String)>,
    pub lhs: Rational,
    pub middle: Rational,
    pub rhs: Rational,
    /// `lhs == middle == rhs`, exactly.
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(
        identity: impl Into<String>,
        params: Vec<(String, String)>,
        lhs: Rational,
        middle: Rational,
        rhs: Rational,
    ) -> Self {
        let pass = lhs == middle && middle == rhs;
        IdentityReport {
            identity: identity.into(),
            params,
            lhs,
            middle,
            rhs,
            pass,
        }
    }

    pub fn param(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

fn params(dist: Option<&DistributionSpec>, n: usize, upper: usize, x: &Rational) -> Vec<(String, String)> {
    let mut out = Vec::with_capacity(4);
    if let Some(d) = dist {
        out.push(("dist".into(), d.to_string()));
    }
    out.push(("n".into(), n.to_string()));
    out.push(("N".into(), upper.to_string()));
    out.push(("x".into(), x.to_string()));
    out
}

/// `sum_{k=0}^N E(x + S_k)^n`.
pub fn sum_direct(dist: &DistributionSpec, n: usize, upper: usize, x: &Rational) -> Rational {
    let mut sums = SumMoments::new(dist.clone());
    (0..=upper).map(|k| sums.shifted(k, n, x)).sum()
}

/// `sum_{m=0}^{n∧N} C(N+1, m+1) m! S_Y(n, m; x)`.
pub fn sum_via_stirling(dist: &DistributionSpec, n: usize, upper: usize, x: &Rational) -> Rational {
    (0..=n.min(upper))
        .map(|m| binomial(upper + 1, (m + 1) as i64) * factorial(m) * sy(dist, n, m, x))
        .sum()
}

/// `sum_{k=0}^{n∧N} c_{n,N}(k) E(x + S_k)^n`.
pub fn sum_via_cnn(dist: &DistributionSpec, n: usize, upper: usize, x: &Rational) -> Rational {
    let table = cnn_cached(n, upper);
    let mut sums = SumMoments::new(dist.clone());
    table
        .values
        .iter()
        .enumerate()
        .map(|(k, c)| c * sums.shifted(k, n, x))
        .sum()
}

/// Corollary-8 style triple for one parameter point.
pub fn corollary8_report(dist: &DistributionSpec, n: usize, upper: usize, x: &Rational) -> IdentityReport {
    IdentityReport::new(
        "corollary8",
        params(Some(dist), n, upper, x),
        sum_direct(dist, n, upper, x),
        sum_via_stirling(dist, n, upper, x),
        sum_via_cnn(dist, n, upper, x),
    )
}

/// Reports for every `n <= n_max`, `N <= N_max`, `x` in `xs`.
pub fn verify_corollary8(
    dist: &DistributionSpec,
    n_max: usize,
    upper_max: usize,
    xs: &[Rational],
) -> Vec<IdentityReport> {
    let mut out = Vec::new();
    for n in 0..=n_max {
        for upper in 0..=upper_max {
            for x in xs {
                out.push(corollary8_report(dist, n, upper, x));
            }
        }
    }
    out
}

/// Compares `sum_k E p(x + S_k)`, `sum_m C(N+1, m+1) E Δ^m_{Y_1..Y_m} p(x)` and
/// `sum_k c_{deg p, N}(k) E p(x + S_k)`. The expected difference is expanded as
/// `sum_k C(m,k) (-1)^(m-k) E p(x + S_k)`.
pub fn sum_poly(p: &Polynomial, dist: &DistributionSpec, upper: usize, x: &Rational) -> Result<IdentityReport> {
    let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
    let mut sums = SumMoments::new(dist.clone());
    let mut expect_at = |k: usize| -> Rational {
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| c * sums.shifted(k, j, x))
            .sum()
    };
    let values: Vec<Rational> = (0..=upper).map(&mut expect_at).collect();
    let lhs: Rational = values.iter().sum();
    let middle: Rational = (0..=deg.min(upper))
        .map(|m| {
            let diff: Rational = (0..=m)
                .map(|k| binomial(m, k as i64) * Rational::sign_pow(m - k) * &values[k])
                .sum();
            binomial(upper + 1, (m + 1) as i64) * diff
        })
        .sum();
    let table = cnn_cached(deg, upper);
    let rhs: Rational = table.values.iter().zip(&values).map(|(c, v)| c * v).sum();
    let mut prm = params(Some(dist), deg, upper, x);
    prm.insert(0, ("p".into(), format!("{p:?}")));
    Ok(IdentityReport::new("theorem7", prm, lhs, middle, rhs))
}

/// `sum_{k=0}^N (x+k)^n` against the classical Stirling form and the Bernoulli
/// polynomial difference `(B_{n+1}(x+N+1) - B_{n+1}(x)) / (n+1)`.
pub fn classical_bernoulli_check(n: usize, upper: usize, x: &Rational) -> IdentityReport {
    let lhs: Rational = (0..=upper).map(|k| (x + Rational::from(k)).pow(n)).sum();
    let middle: Rational = (0..=n.min(upper))
        .map(|m| binomial(upper + 1, (m + 1) as i64) * factorial(m) * stirling2_poly(n, m, x))
        .sum();
    let bern = AppellSequence::new(AppellSeed::bernoulli(n + 1));
    let b = |t: &Rational| appell_eval(&bern, n + 1, t).expect("order n + 1");
    let rhs = (b(&(x + Rational::from(upper + 1))) - b(x)) / Rational::from(n + 1);
    IdentityReport::new("bernoulli-classic", params(None, n, upper, x), lhs, middle, rhs)
}

/// Unit-step case `Y = 1`: the three sums together with the classical
/// Bernoulli formula.
pub fn theorem1_reports(n: usize, upper: usize, x: &Rational) -> [IdentityReport; 2] {
    let one = DistributionSpec::Constant(Rational::one());
    let mut c8 = corollary8_report(&one, n, upper, x);
    c8.identity = "theorem1".into();
    [c8, classical_bernoulli_check(n, upper, x)]
}

/// Exponential steps: `sum_k <k>_n`, `sum_m C(N+1,m+1) (n)_m <m>_{n-m}` and
/// `sum_k c_{n,N}(k) <k>_n`.
pub fn theorem9_report(n: usize, upper: usize) -> IdentityReport {
    let rise = |k: usize| rising_factorial(&Rational::from(k), n);
    let lhs: Rational = (0..=upper).map(rise).sum();
    let middle: Rational = (0..=n.min(upper))
        .map(|m| {
            binomial(upper + 1, (m + 1) as i64)
                * falling_factorial(&Rational::from(n), m)
                * rising_factorial(&Rational::from(m), n - m)
        })
        .sum();
    let table = cnn_cached(n, upper);
    let rhs: Rational = table.values.iter().enumerate().map(|(k, c)| c * rise(k)).sum();
    IdentityReport::new("theorem9", params(None, n, upper, &Rational::zero()), lhs, middle, rhs)
}

/// Poisson(`λ`) steps: `sum_k B_n(kλ)`, the closed-form Stirling sum, and
/// `sum_k c_{n,N}(k) B_n(kλ)`.
pub fn theorem10_report(n: usize, upper: usize, lambda: &Rational) -> Result<IdentityReport> {
    let bell = |k: usize| bell_poly(n, &(lambda * Rational::from(k)));
    let lhs: Rational = (0..=upper).map(bell).sum();
    let middle = (0..=n.min(upper)).try_fold(Rational::zero(), |acc, m| {
        Ok::<_, Error>(acc + binomial(upper + 1, (m + 1) as i64) * factorial(m) * sy_closed_poisson(n, m, lambda)?)
    })?;
    let table = cnn_cached(n, upper);
    let rhs: Rational = table.values.iter().enumerate().map(|(k, c)| c * bell(k)).sum();
    let mut prm = params(None, n, upper, &Rational::zero());
    prm.insert(0, ("lambda".into(), lambda.to_string()));
    Ok(IdentityReport::new("theorem10", prm, lhs, middle, rhs))
}

/// Shifted geometric steps: `sum_k (p/q)^k Li^{⋆k}_{-n}(q)`, the closed-form
/// Stirling sum, and `sum_k c_{n,N}(k) (p/q)^k Li^{⋆k}_{-n}(q)`.
pub fn theorem11_report(n: usize, upper: usize, q: &Rational) -> Result<IdentityReport> {
    let ratio = (Rational::one() - q) / q;
    let terms: Vec<Rational> = (0..=upper)
        .map(|k| Ok(ratio.pow(k) * li_conv_direct(n, k, q)?))
        .collect::<Result<_>>()?;
    let lhs: Rational = terms.iter().sum();
    let middle = (0..=n.min(upper)).try_fold(Rational::zero(), |acc, m| {
        Ok::<_, Error>(acc + binomial(upper + 1, (m + 1) as i64) * factorial(m) * sy_closed_geometric_shifted(n, m, q)?)
    })?;
    let table = cnn_cached(n, upper);
    let rhs: Rational = table.values.iter().zip(&terms).map(|(c, t)| c * t).sum();
    let mut prm = params(None, n, upper, &Rational::zero());
    prm.insert(0, ("q".into(), q.to_string()));
    Ok(IdentityReport::new("theorem11", prm, lhs, middle, rhs))
}

//! Probabilistic Stirling polynomials of the second kind
//!
//! `S_Y(n, m; x) = (1/m!) sum_{k=0}^m C(m,k) (-1)^(m-k) E(x + S_k)^n`
//!
//! computed along four independent routes, plus closed forms for the catalog
//! laws that have one. The routes share no caches: each builds its own moment
//! tables, so agreement between them is real evidence.

use crate::combinat::{
    binomial, double_factorial, factorial, multinomial, rising_factorial, stirling1, stirling2, stirling2_poly,
    weak_compositions,
};
use crate::distributions::{DistributionSpec, MomentSequence, SumMoments};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;
use crate::series::EGFSeries;

/// Default cap on `m` for [`sy_via_uniform_rep`]; its multinomial expansion
/// grows like `C(n, m)` terms.
pub const UNIFORM_REP_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Path {
    AlternatingSum,
    GeneratingFunction,
    UniformRepresentation,
    FactorialMoments,
    ClosedForm,
}

impl Path {
    pub const ALL: [Path; 5] = [
        Path::AlternatingSum,
        Path::GeneratingFunction,
        Path::UniformRepresentation,
        Path::FactorialMoments,
        Path::ClosedForm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Path::AlternatingSum => "alternating-sum",
            Path::GeneratingFunction => "generating-function",
            Path::UniformRepresentation => "uniform-representation",
            Path::FactorialMoments => "factorial-moments",
            Path::ClosedForm => "closed-form",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenStirlingResult {
    pub value: Rational,
    pub path: Path,
}

/// Evaluates `S_Y(n, m; x)` along `path`. `ClosedForm` yields `Ok(None)` when
/// the law has no closed form at this `x`; `UniformRepresentation` errors above
/// [`UNIFORM_REP_CAP`].
pub fn sy_by_path(
    path: Path,
    dist: &DistributionSpec,
    n: usize,
    m: usize,
    x: &Rational,
) -> Result<Option<GenStirlingResult>> {
    let value = match path {
        Path::AlternatingSum => sy(dist, n, m, x),
        Path::GeneratingFunction => sy_via_gf(dist, n, m, x),
        Path::UniformRepresentation => sy_via_uniform_rep(dist, n, m, x)?,
        Path::FactorialMoments => sy_via_factorial(dist, n, m, x),
        Path::ClosedForm => match sy_closed_form(dist, n, m, x) {
            Some(v) => v?,
            None => return Ok(None),
        },
    };
    Ok(Some(GenStirlingResult { value, path }))
}

/// The defining alternating sum. Zero for `m > n`.
pub fn sy(dist: &DistributionSpec, n: usize, m: usize, x: &Rational) -> Rational {
    if m > n {
        return Rational::zero();
    }
    let mut sums = SumMoments::new(dist.clone());
    let total: Rational = (0..=m)
        .map(|k| binomial(m, k as i64) * Rational::sign_pow(m - k) * sums.shifted(k, n, x))
        .sum();
    total / factorial(m)
}

/// `S_Y(n, m; ·)` as a polynomial of degree at most `n - m` in `x`.
pub fn sy_poly(dist: &DistributionSpec, n: usize, m: usize) -> Result<Polynomial> {
    if m > n {
        return Err(Error::IndexOrder { m, n });
    }
    let mut sums = SumMoments::new(dist.clone());
    // E(x + S_k)^n = sum_j C(n, j) E[S_k^(n-j)] x^j
    let mut coeffs = vec![Rational::zero(); n + 1];
    for k in 0..=m {
        let w = binomial(m, k as i64) * Rational::sign_pow(m - k);
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c += &w * binomial(n, j as i64) * sums.get(k, n - j);
        }
    }
    let inv = factorial(m).recip();
    Ok(Polynomial::new(coeffs).scale(&inv))
}

/// `n! [z^n]` of `e^{xz} (E e^{zY} - 1)^m / m!`.
pub fn sy_via_gf(dist: &DistributionSpec, n: usize, m: usize, x: &Rational) -> Rational {
    let mgf = EGFSeries::from_moments(dist, n);
    let series = mgf
        .minus_constant(&Rational::one())
        .pow(m)
        .mul(&EGFSeries::exp_scaled(x, n))
        .expect("equal orders")
        .scale(&factorial(m).recip());
    series.egf_coefficient(n).expect("order n")
}

/// `C(n, m) E[Y_1...Y_m (x + Y_1 U_1 + ... + Y_m U_m)^(n-m)]`, expanded
/// multinomially. Each term factors by independence into
/// `x^a0 prod_j E[Y^(a_j+1)] / (a_j + 1)`.
pub fn sy_via_uniform_rep(dist: &DistributionSpec, n: usize, m: usize, x: &Rational) -> Result<Rational> {
    sy_via_uniform_rep_capped(dist, n, m, x, UNIFORM_REP_CAP)
}

pub fn sy_via_uniform_rep_capped(
    dist: &DistributionSpec,
    n: usize,
    m: usize,
    x: &Rational,
    cap: usize,
) -> Result<Rational> {
    if m > cap {
        return Err(Error::CapExceeded { m, cap });
    }
    if m > n {
        return Ok(Rational::zero());
    }
    let mut moments = MomentSequence::new(dist.clone());
    let d = n - m;
    let expectation: Rational = weak_compositions(d, m + 1)
        .iter()
        .map(|parts| {
            let factors: Rational = parts[1..]
                .iter()
                .map(|&a| moments.get(a + 1) / Rational::from(a + 1))
                .product();
            multinomial(parts) * x.pow(parts[0]) * factors
        })
        .sum();
    Ok(binomial(n, m as i64) * expectation)
}

/// `E(U_1 + ... + U_m)^d` for independent uniforms, by multinomial expansion
/// with `E U^a = 1 / (a + 1)`.
pub fn uniform_sum_moment(m: usize, d: usize) -> Rational {
    weak_compositions(d, m)
        .iter()
        .map(|parts| {
            multinomial(parts)
                * parts
                    .iter()
                    .map(|&a| Rational::from(a + 1).recip())
                    .product::<Rational>()
        })
        .sum()
}

/// `(1/m!) sum_i S(n,i) sum_k C(m,k) (-1)^(m-k) E(x + S_k)_i`, with the falling
/// factorial moments expanded through signed Stirling numbers of the first kind.
pub fn sy_via_factorial(dist: &DistributionSpec, n: usize, m: usize, x: &Rational) -> Rational {
    let mut sums = SumMoments::new(dist.clone());
    let mut total = Rational::zero();
    for k in 0..=m {
        let power_moments: Vec<Rational> = (0..=n).map(|j| sums.shifted(k, j, x)).collect();
        let inner: Rational = (0..=n)
            .map(|i| {
                let falling: Rational = (0..=i).map(|j| stirling1(i, j) * &power_moments[j]).sum();
                stirling2(n, i) * falling
            })
            .sum();
        total += binomial(m, k as i64) * Rational::sign_pow(m - k) * inner;
    }
    total / factorial(m)
}

/// Dispatches to the closed form for `dist`, when one exists at `x`.
pub fn sy_closed_form(dist: &DistributionSpec, n: usize, m: usize, x: &Rational) -> Option<Result<Rational>> {
    use DistributionSpec::*;
    if m > n {
        return Some(Ok(Rational::zero()));
    }
    match dist {
        Bernoulli(p) => return Some(Ok(p.pow(m) * stirling2_poly(n, m, x))),
        Constant(a) if a.is_one() => return Some(Ok(stirling2_poly(n, m, x))),
        _ => {}
    }
    if !x.is_zero() {
        return None;
    }
    match dist {
        Exponential => Some(sy_closed_exponential(n, m)),
        Poisson(l) => Some(sy_closed_poisson(n, m, l)),
        StdNormal => Some(sy_closed_normal(n, m)),
        Uniform01 => Some(sy_closed_uniform(n, m)),
        UniformTimesExponential => Some(sy_closed_ut(n, m)),
        Shifted(base, c) if c.is_one() => match base.as_ref() {
            Geometric(q) => Some(sy_closed_geometric_shifted(n, m, q)),
            _ => None,
        },
        _ => None,
    }
}

fn need_order(n: usize, m: usize) -> Result<()> {
    if m > n {
        Err(Error::IndexOrder { m, n })
    } else {
        Ok(())
    }
}

/// Exponential law: `S_Y(n, m) = C(n, m) <m>_{n-m}`.
pub fn sy_closed_exponential(n: usize, m: usize) -> Result<Rational> {
    need_order(n, m)?;
    Ok(binomial(n, m as i64) * rising_factorial(&Rational::from(m), n - m))
}

/// Poisson law with mean `λ`: `S_Y(n, m) = sum_{r=m}^n S(n,r) S(r,m) λ^r`.
/// Any rational `λ` is accepted; the right side is a polynomial in `λ`.
pub fn sy_closed_poisson(n: usize, m: usize, lambda: &Rational) -> Result<Rational> {
    need_order(n, m)?;
    Ok((m..=n).map(|r| stirling2(n, r) * stirling2(r, m) * lambda.pow(r)).sum())
}

/// `Y + 1` with `Y` geometric(`q`):
/// `S_{Y+1}(n, m) = q^-m sum_{r=m}^n C(r,m) <m>_{r-m} S(n,r) (q/p)^r`.
pub fn sy_closed_geometric_shifted(n: usize, m: usize, q: &Rational) -> Result<Rational> {
    need_order(n, m)?;
    if !q.is_positive() || *q >= Rational::one() {
        return Err(Error::InvalidParameter(format!("geometric needs 0 < q < 1, got {q}")));
    }
    let ratio = q / (Rational::one() - q);
    let m_rat = Rational::from(m);
    let sum: Rational = (m..=n)
        .map(|r| binomial(r, m as i64) * rising_factorial(&m_rat, r - m) * stirling2(n, r) * ratio.pow(r))
        .sum();
    Ok(sum / q.pow(m))
}

/// Standard normal: zero for odd `n_power`; for `n_power = 2n`,
/// `(-1)^n H_{2n}(0) S(n, m)`.
pub fn sy_closed_normal(n_power: usize, m: usize) -> Result<Rational> {
    need_order(n_power, m)?;
    if n_power % 2 == 1 {
        return Ok(Rational::zero());
    }
    let half = n_power / 2;
    Ok(Rational::sign_pow(half) * hermite_at_zero(n_power) * stirling2(half, m))
}

/// x-Whitney numbers of the second kind, `S_{Y=α}(n, m; x) / α^m`.
pub fn whitney(alpha: &Rational, n: usize, m: usize, x: &Rational) -> Result<Rational> {
    if alpha.is_zero() {
        return Err(Error::InvalidParameter("whitney numbers need α ≠ 0".into()));
    }
    Ok(sy(&DistributionSpec::Constant(alpha.clone()), n, m, x) / alpha.pow(m))
}

/// Uniform law on `[0, 1]`:
/// `S_Y(n, m) = n!/(n+m)! sum_k C(n+m, n+k) (-1)^(m-k) S(n+k, k)`.
pub fn sy_closed_uniform(n: usize, m: usize) -> Result<Rational> {
    need_order(n, m)?;
    let sum: Rational = (0..=m)
        .map(|k| binomial(n + m, (n + k) as i64) * Rational::sign_pow(m - k) * stirling2(n + k, k))
        .sum();
    Ok(factorial(n) / factorial(n + m) * sum)
}

/// `Y = U T`:
/// `S_Y(n, m) = (-1)^n n!/(n+m)! sum_k C(n+m, n+k) (-1)^(m-k) s(n+k, k)`.
pub fn sy_closed_ut(n: usize, m: usize) -> Result<Rational> {
    need_order(n, m)?;
    let sum: Rational = (0..=m)
        .map(|k| binomial(n + m, (n + k) as i64) * Rational::sign_pow(m - k) * stirling1(n + k, k))
        .sum();
    Ok(Rational::sign_pow(n) * factorial(n) / factorial(n + m) * sum)
}

/// Probabilists' Hermite value `H_n(0)`, the real number `E(iZ)^n`:
/// zero for odd `n`, `(-1)^(n/2) (n-1)!!` for even `n`.
pub fn hermite_at_zero(n: usize) -> Rational {
    if n % 2 == 1 {
        Rational::zero()
    } else {
        Rational::sign_pow(n / 2) * double_factorial(n.saturating_sub(1))
    }
}

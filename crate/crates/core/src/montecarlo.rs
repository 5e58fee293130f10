//! Seeded Monte Carlo estimates of `E S_k^n`.
//!
//! Generator: ChaCha8 (`rand_chacha`), keyed by `seed` through
//! `seed_from_u64`, with the stream number set to a 64-bit FNV-1a hash of
//! `(dist, k, n)`. Estimates are therefore reproducible bit for bit and
//! independent of one another.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distributions::{sum_moment, DistributionSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SampleEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(samples)`.
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentCheck {
    pub estimate: SampleEstimate,
    pub exact: f64,
    pub z: f64,
    pub pass: bool,
}

enum Sampler {
    Constant(f64),
    Bernoulli(f64),
    Poisson(f64),
    Geometric(f64),
    Exponential,
    Uniform,
    Normal,
    UniformTimesExponential,
    Finite { values: Vec<f64>, cumulative: Vec<f64> },
    Shifted(Box<Sampler>, f64),
}

impl Sampler {
    fn compile(dist: &DistributionSpec) -> Sampler {
        use DistributionSpec as D;
        match dist {
            D::Constant(a) => Sampler::Constant(a.to_f64()),
            D::Bernoulli(p) => Sampler::Bernoulli(p.to_f64()),
            D::Poisson(l) => Sampler::Poisson(l.to_f64()),
            D::Geometric(q) => Sampler::Geometric(q.to_f64()),
            D::Exponential => Sampler::Exponential,
            D::Uniform01 => Sampler::Uniform,
            D::StdNormal => Sampler::Normal,
            D::UniformTimesExponential => Sampler::UniformTimesExponential,
            D::FiniteSupport(atoms) => {
                let mut acc = 0.0;
                let cumulative = atoms
                    .iter()
                    .map(|(_, p)| {
                        acc += p.to_f64();
                        acc
                    })
                    .collect();
                Sampler::Finite {
                    values: atoms.iter().map(|(v, _)| v.to_f64()).collect(),
                    cumulative,
                }
            }
            D::Shifted(base, c) => Sampler::Shifted(Box::new(Sampler::compile(base)), c.to_f64()),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match self {
            Sampler::Constant(a) => *a,
            Sampler::Bernoulli(p) => f64::from(u8::from(rng.random::<f64>() < *p)),
            Sampler::Poisson(l) => {
                let u = rng.random::<f64>();
                let mut j = 0u32;
                let mut pmf = (-l).exp();
                let mut cdf = pmf;
                while u >= cdf && pmf > 0.0 {
                    j += 1;
                    pmf *= l / f64::from(j);
                    cdf += pmf;
                }
                f64::from(j)
            }
            // P(Y = j) = (1 - q) q^j
            Sampler::Geometric(q) => (open_unit(rng).ln() / q.ln()).floor(),
            Sampler::Exponential => -open_unit(rng).ln(),
            Sampler::Uniform => rng.random::<f64>(),
            Sampler::Normal => {
                let r = (-2.0 * open_unit(rng).ln()).sqrt();
                r * (std::f64::consts::TAU * rng.random::<f64>()).cos()
            }
            Sampler::UniformTimesExponential => rng.random::<f64>() * -open_unit(rng).ln(),
            Sampler::Finite { values, cumulative } => {
                let u = rng.random::<f64>();
                let i = cumulative.partition_point(|&c| c <= u).min(values.len() - 1);
                values[i]
            }
            Sampler::Shifted(base, c) => base.draw(rng) + c,
        }
    }
}

/// Uniform on `(0, 1]`.
fn open_unit(rng: &mut ChaCha8Rng) -> f64 {
    1.0 - rng.random::<f64>()
}

fn stream_id(dist: &DistributionSpec, k: usize, n: usize) -> u64 {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01b3;
    let key = format!("{dist}|{k}|{n}");
    key.bytes().fold(OFFSET, |h, b| (h ^ u64::from(b)).wrapping_mul(PRIME))
}

/// Monte Carlo estimate of `E S_k^n` from `samples` independent `k`-fold sums.
pub fn estimate_sum_moment(
    dist: &DistributionSpec,
    k: usize,
    n: usize,
    samples: u64,
    seed: u64,
) -> Result<SampleEstimate> {
    dist.validate()?;
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let sampler = Sampler::compile(dist);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id(dist, k, n));
    let exponent = i32::try_from(n).map_err(|_| Error::InvalidParameter(format!("power {n} too large")))?;

    // Welford
    let (mut mean, mut m2) = (0.0f64, 0.0f64);
    for i in 1..=samples {
        let s: f64 = (0..k).map(|_| sampler.draw(&mut rng)).sum();
        let v = s.powi(exponent);
        let delta = v - mean;
        mean += delta / i as f64;
        m2 += delta * (v - mean);
    }
    let var = if samples > 1 { m2 / (samples - 1) as f64 } else { 0.0 };
    Ok(SampleEstimate {
        mean,
        stderr: var.max(0.0).sqrt() / (samples as f64).sqrt(),
        samples,
        seed,
    })
}

/// Compares an estimate with the exact `E S_k^n`. The band is `z` standard
/// errors plus `1e-12 * max(1, |exact|)` so zero-variance cases that only
/// differ by float rounding still pass.
pub fn check_moment_detailed(
    dist: &DistributionSpec,
    k: usize,
    n: usize,
    samples: u64,
    seed: u64,
    z: f64,
) -> Result<MomentCheck> {
    let estimate = estimate_sum_moment(dist, k, n, samples, seed)?;
    let exact = sum_moment(dist, k, n).to_f64();
    let slack = 1e-12 * exact.abs().max(1.0);
    let pass = (estimate.mean - exact).abs() <= z * estimate.stderr + slack;
    Ok(MomentCheck {
        estimate,
        exact,
        z,
        pass,
    })
}

pub fn check_moment(dist: &DistributionSpec, k: usize, n: usize, samples: u64, seed: u64, z: f64) -> Result<bool> {
    Ok(check_moment_detailed(dist, k, n, samples, seed, z)?.pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;

    #[test]
    fn deterministic() {
        let d = DistributionSpec::Exponential;
        let a = estimate_sum_moment(&d, 2, 3, 20_000, 7).unwrap();
        let b = estimate_sum_moment(&d, 2, 3, 20_000, 7).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        let c = estimate_sum_moment(&d, 2, 3, 20_000, 8).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn constant_is_exact() {
        let d = DistributionSpec::Constant(Rational::new(3, 2));
        let e = estimate_sum_moment(&d, 4, 3, 1000, 1).unwrap();
        assert_eq!(e.mean, 216.0);
        assert_eq!(e.stderr, 0.0);
        assert!(check_moment(&d, 4, 3, 10, 99, 6.0).unwrap());
        assert!(check_moment(&DistributionSpec::Constant(Rational::new(1, 3)), 3, 5, 10, 0, 6.0).unwrap());
    }

    #[test]
    fn examples() {
        let e = estimate_sum_moment(&DistributionSpec::Exponential, 2, 3, 1_000_000, 11).unwrap();
        assert!((e.mean - 24.0).abs() <= 5.0 * e.stderr);
        let u = estimate_sum_moment(&DistributionSpec::Uniform01, 2, 2, 1_000_000, 11).unwrap();
        assert!((u.mean - 7.0 / 6.0).abs() <= 5.0 * u.stderr);
        assert!(check_moment(&DistributionSpec::StdNormal, 3, 4, 1_000_000, 3, 6.0).unwrap());
        assert!(check_moment(&DistributionSpec::UniformTimesExponential, 2, 2, 1_000_000, 3, 6.0).unwrap());
    }

    #[test]
    fn discrete_laws() {
        let half = Rational::new(1, 2);
        for d in [
            DistributionSpec::Bernoulli(half.clone()),
            DistributionSpec::Poisson(Rational::one()),
            DistributionSpec::Geometric(half.clone()),
            DistributionSpec::finite(vec![
                (Rational::integer(-1), half.clone()),
                (Rational::integer(2), half),
            ])
            .unwrap(),
        ] {
            assert!(check_moment(&d, 3, 3, 200_000, 5, 6.0).unwrap(), "{d}");
        }
    }

    #[test]
    fn rejects_zero_samples() {
        assert!(estimate_sum_moment(&DistributionSpec::Uniform01, 1, 1, 0, 0).is_err());
    }
}

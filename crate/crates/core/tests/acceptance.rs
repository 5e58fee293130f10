//! Acceptance gate: one line per criterion, nonzero exit on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use pstirling::appell::{theorem12_check, AppellSeed};
use pstirling::cnn::{cnn_alternating, cnn_table};
use pstirling::combinat::{binomial, stirling2, stirling2_poly};
use pstirling::gen_stirling::{
    sy, sy_closed_exponential, sy_closed_geometric_shifted, sy_closed_normal, sy_closed_poisson, sy_closed_uniform,
    sy_closed_ut, sy_via_factorial, sy_via_gf, sy_via_uniform_rep, uniform_sum_moment,
};
use pstirling::montecarlo::{check_moment_detailed, estimate_sum_moment};
use pstirling::polylog::{li_conv_direct, li_conv_prob, li_neg};
use pstirling::sums::{
    classical_bernoulli_check, corollary8_report, sum_direct, sum_via_cnn, sum_via_stirling, theorem10_report,
    theorem11_report, theorem9_report,
};
use pstirling::{DistributionSpec, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn xs() -> [Rational; 4] {
    [q(0, 1), q(1, 1), q(-1, 1), q(1, 2)]
}

/// The ten kinds with the parameter choices used throughout.
fn catalog() -> Vec<DistributionSpec> {
    use DistributionSpec as D;
    vec![
        D::Constant(q(1, 1)),
        D::Constant(q(2, 1)),
        D::Bernoulli(q(1, 2)),
        D::Poisson(q(1, 1)),
        D::Poisson(q(1, 2)),
        D::Geometric(q(1, 2)),
        D::Geometric(q(1, 3)),
        D::Exponential,
        D::Uniform01,
        D::StdNormal,
        D::UniformTimesExponential,
        D::finite(vec![(q(-1, 1), q(1, 3)), (q(0, 1), q(1, 6)), (q(3, 2), q(1, 2))]).unwrap(),
        D::shifted(D::Geometric(q(1, 2)), q(1, 1)),
        D::shifted(D::Geometric(q(1, 3)), q(1, 1)),
    ]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Outcome {
    let mut rows = 0;
    for n in 0..=8 {
        for upper in 0..=20usize {
            let sum = cnn_table(n, upper).row_sum();
            ensure(sum == Rational::from(upper + 1), || {
                format!("n={n} N={upper}: row sum {sum}")
            })?;
            rows += 1;
        }
    }
    Ok(format!("{rows} rows"))
}

fn c2() -> Outcome {
    let mut entries = 0;
    for upper in 1..=20usize {
        for n in 0..upper {
            let table = cnn_table(n, upper);
            for k in 0..=n {
                let alt = cnn_alternating(n, upper, k).map_err(|e| e.to_string())?;
                ensure(&alt == table.get(k).unwrap(), || {
                    format!("n={n} N={upper} k={k}: {alt}")
                })?;
                entries += 1;
            }
        }
    }
    Ok(format!("{entries} entries"))
}

fn c3() -> Outcome {
    let cases: Vec<(DistributionSpec, usize, usize, Rational)> = catalog()
        .into_iter()
        .flat_map(|d| {
            (0..=8).flat_map(move |n| {
                let d = d.clone();
                (0..=n).flat_map(move |m| {
                    let d = d.clone();
                    xs().into_iter().map(move |x| (d.clone(), n, m, x))
                })
            })
        })
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(d, n, m, x)| {
            let base = sy(d, *n, *m, x);
            let mut ok = base == sy_via_gf(d, *n, *m, x) && base == sy_via_factorial(d, *n, *m, x);
            if *m <= 4 {
                ok &= sy_via_uniform_rep(d, *n, *m, x).ok() == Some(base.clone());
            }
            (!ok).then(|| format!("{d} n={n} m={m} x={x}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} (dist, n, m, x) points", cases.len()))
}

fn c4() -> Outcome {
    use DistributionSpec as D;
    let zero = q(0, 1);
    let mut checks = 0;
    let mut cmp =
        |label: &str, d: &DistributionSpec, n: usize, m: usize, x: &Rational, closed: pstirling::Result<Rational>| {
            let closed = closed.map_err(|e| format!("{label}: {e}"))?;
            let direct = sy(d, n, m, x);
            checks += 1;
            ensure(direct == closed, || {
                format!("{label} n={n} m={m} x={x}: {direct} vs {closed}")
            })
        };
    for n in 0..=8 {
        for m in 0..=n {
            cmp("exponential", &D::Exponential, n, m, &zero, sy_closed_exponential(n, m))?;
            for l in [q(1, 1), q(1, 2), q(2, 1)] {
                cmp(
                    "poisson",
                    &D::Poisson(l.clone()),
                    n,
                    m,
                    &zero,
                    sy_closed_poisson(n, m, &l),
                )?;
            }
            for g in [q(1, 2), q(1, 3)] {
                let d = D::shifted(D::Geometric(g.clone()), q(1, 1));
                cmp("geometric+1", &d, n, m, &zero, sy_closed_geometric_shifted(n, m, &g))?;
            }
            cmp("normal", &D::StdNormal, n, m, &zero, sy_closed_normal(n, m))?;
            cmp("uniform", &D::Uniform01, n, m, &zero, sy_closed_uniform(n, m))?;
            cmp("ut", &D::UniformTimesExponential, n, m, &zero, sy_closed_ut(n, m))?;
            for x in xs() {
                let p = q(1, 2);
                cmp(
                    "bernoulli",
                    &D::Bernoulli(p.clone()),
                    n,
                    m,
                    &x,
                    Ok(p.pow(m) * stirling2_poly(n, m, &x)),
                )?;
            }
        }
    }
    Ok(format!("{checks} closed-form values"))
}

fn c5() -> Outcome {
    let anchor = DistributionSpec::Constant(q(1, 1));
    let zero = q(0, 1);
    let triple = [
        sum_direct(&anchor, 2, 3, &zero),
        sum_via_stirling(&anchor, 2, 3, &zero),
        sum_via_cnn(&anchor, 2, 3, &zero),
    ];
    ensure(triple.iter().all(|v| *v == q(14, 1)), || format!("anchor {triple:?}"))?;
    let cases: Vec<(DistributionSpec, usize, usize, Rational)> = catalog()
        .into_iter()
        .flat_map(|d| {
            (0..=6).flat_map(move |n| {
                let d = d.clone();
                (0..=15).flat_map(move |upper| {
                    let d = d.clone();
                    xs().into_iter().map(move |x| (d.clone(), n, upper, x))
                })
            })
        })
        .collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(d, n, upper, x)| {
            let rep = corollary8_report(d, *n, *upper, x);
            (!rep.pass).then(|| format!("{d} n={n} N={upper} x={x}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} triples, anchor = 14", cases.len()))
}

fn c6() -> Outcome {
    let mut count = 0;
    for upper in 0..=12 {
        for n in 0..=6 {
            let t9 = theorem9_report(n, upper);
            ensure(t9.pass, || format!("theorem9 {t9:?}"))?;
            for l in [q(1, 1), q(1, 2), q(2, 1)] {
                let t10 = theorem10_report(n, upper, &l).map_err(|e| e.to_string())?;
                ensure(t10.pass, || format!("theorem10 {t10:?}"))?;
                count += 1;
            }
            count += 1;
        }
        for n in 0..=4 {
            for g in [q(1, 2), q(1, 3)] {
                let t11 = theorem11_report(n, upper, &g).map_err(|e| e.to_string())?;
                ensure(t11.pass, || format!("theorem11 {t11:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} reports"))
}

fn c7() -> Outcome {
    let mut count = 0;
    for seed in [AppellSeed::bernoulli(6), AppellSeed::euler(6), AppellSeed::hermite(6)] {
        for n in 0..=6 {
            for upper in n..=12 {
                for x in [q(0, 1), q(1, 1), q(1, 2)] {
                    let rep = theorem12_check(&seed, n, upper, &x).map_err(|e| e.to_string())?;
                    ensure(rep.pass, || format!("{} n={n} N={upper} x={x}", seed.name()))?;
                    count += 1;
                }
            }
        }
    }
    for n in 0..=8 {
        for upper in 0..=15 {
            for x in [q(0, 1), q(1, 1), q(1, 2)] {
                let rep = classical_bernoulli_check(n, upper, &x);
                ensure(rep.pass, || format!("classical n={n} N={upper} x={x}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} reports"))
}

fn c8() -> Outcome {
    for n in 0..=8 {
        for m in 0..=n {
            let rep = binomial(n, m as i64) * uniform_sum_moment(m, n - m);
            ensure(rep == stirling2(n, m), || format!("n={n} m={m}: {rep}"))?;
        }
    }
    Ok("45 values".into())
}

fn c9() -> Outcome {
    let anchor = li_neg(2, &q(1, 2)).map_err(|e| e.to_string())?;
    ensure(anchor == q(6, 1), || format!("li_neg(2, 1/2) = {anchor}"))?;
    for g in [q(1, 2), q(1, 3), q(3, 4)] {
        for n in 0..=5 {
            for k in 0..=4 {
                let a = li_conv_direct(n, k, &g).map_err(|e| e.to_string())?;
                let b = li_conv_prob(n, k, &g).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("q={g} n={n} k={k}: {a} vs {b}"))?;
            }
        }
    }
    Ok("90 pairs, li_neg(2, 1/2) = 6".into())
}

fn c10() -> Outcome {
    const SAMPLES: u64 = 1_000_000;
    const SEED: u64 = 20_240_601;
    const Z: f64 = 6.0;
    let dists = [
        DistributionSpec::Exponential,
        DistributionSpec::Uniform01,
        DistributionSpec::StdNormal,
        DistributionSpec::UniformTimesExponential,
        DistributionSpec::Geometric(q(1, 2)),
        DistributionSpec::Poisson(q(1, 1)),
    ];
    let cases: Vec<(DistributionSpec, usize, usize)> = dists
        .iter()
        .flat_map(|d| (0..=3).flat_map(move |k| (0..=5).map(move |n| (d.clone(), k, n))))
        .collect();
    let results: Vec<_> = cases
        .par_iter()
        .map(|(d, k, n)| check_moment_detailed(d, *k, *n, SAMPLES, SEED, Z).map(|c| (d, k, n, c)))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (d, k, n, c) in &results {
        ensure(c.pass, || {
            format!(
                "{d} k={k} n={n}: est {} exact {} stderr {}",
                c.estimate.mean, c.exact, c.estimate.stderr
            )
        })?;
        if c.estimate.stderr > 0.0 {
            worst = worst.max((c.estimate.mean - c.exact).abs() / c.estimate.stderr);
        }
    }
    let replay: Vec<_> = results
        .par_iter()
        .filter(|(_, k, _, _)| **k == 3)
        .map(|(d, k, n, c)| {
            estimate_sum_moment(d, **k, **n, SAMPLES, SEED).map(|again| {
                again.mean.to_bits() == c.estimate.mean.to_bits()
                    && again.stderr.to_bits() == c.estimate.stderr.to_bits()
            })
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(replay.iter().all(|&b| b), || "replay not bitwise identical".into())?;
    Ok(format!(
        "{} checks, max |z| = {worst:.2}, replay bitwise identical",
        results.len()
    ))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(-6..=6), rng.random_range(1..=4))
}

fn c11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut cases = Vec::with_capacity(100);
    for _ in 0..100 {
        let atoms = rng.random_range(1..=4usize);
        let weights: Vec<i64> = (0..atoms).map(|_| rng.random_range(1..=9)).collect();
        let total: i64 = weights.iter().sum();
        let law = weights
            .iter()
            .map(|&w| (random_rational(&mut rng), Rational::new(w, total)))
            .collect();
        let dist = DistributionSpec::finite(law).map_err(|e| e.to_string())?;
        let n = rng.random_range(0..=5usize);
        let upper = rng.random_range(0..=10usize);
        let x = Rational::integer(rng.random_range(0..=1));
        cases.push((dist, n, upper, x));
    }
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|(d, n, upper, x)| {
            let rep = corollary8_report(d, *n, *upper, x);
            (!rep.pass).then(|| format!("{d} n={n} N={upper} x={x}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("100 random finite laws".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("c_{n,N} row sums", c1, Duration::from_secs(1)),
        ("alternating c_{n,N} form", c2, Duration::from_secs(1)),
        ("four-path S_Y agreement", c3, Duration::from_secs(30)),
        ("closed forms", c4, Duration::from_secs(10)),
        ("triple sum identity", c5, Duration::from_secs(30)),
        ("exponential/poisson/geometric sums", c6, Duration::from_secs(10)),
        ("appell summation + classical", c7, Duration::from_secs(10)),
        ("uniform representation", c8, Duration::from_secs(5)),
        ("polylog convolution", c9, Duration::from_secs(2)),
        ("monte carlo", c10, Duration::from_secs(60)),
        ("finite-law fuzz", c11, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} [{:.3}s] {name}: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

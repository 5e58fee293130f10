use pstirling::appell::{theorem12_check, AppellSeed};
use pstirling::cnn::cnn_table;
use pstirling::combinat::{bell_poly, stirling1, stirling2};
use pstirling::distributions::{sum_moment, DistributionSpec};
use pstirling::gen_stirling::{sy, sy_closed_form, sy_poly, sy_via_factorial, sy_via_gf, sy_via_uniform_rep};
use pstirling::montecarlo::check_moment_detailed;
use pstirling::sums::{
    classical_bernoulli_check, corollary8_report, theorem10_report, theorem11_report, theorem1_reports,
    theorem9_report, IdentityReport,
};
use pstirling::Rational;

use crate::output::{Fields, OutputRecord, RecordKind};
use crate::{CliError, Params, Suite, TableKind};

const DEFAULT_N_MAX: usize = 6;
const DEFAULT_UPPER_MAX: usize = 10;
const UNIFORM_REP_MAX_M: usize = 4;

pub struct Outcome {
    pub records: Vec<OutputRecord>,
    pub failures: Vec<String>,
    pub summary: Option<String>,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need<T: Clone>(value: &Option<T>, flag: &str) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| usage(format!("missing required flag --{flag}")))
}

fn single_x(params: &Params, default: Rational) -> Result<Rational, CliError> {
    match params.x.as_slice() {
        [] => Ok(default),
        [x] => Ok(x.clone()),
        _ => Err(usage("tables take a single --x")),
    }
}

fn xs(params: &Params) -> Vec<Rational> {
    if params.x.is_empty() {
        vec![Rational::zero()]
    } else {
        params.x.clone()
    }
}

/// `m` values of row `n`, honoring `--m`.
fn m_range(params: &Params, n: usize) -> Vec<usize> {
    match params.m {
        Some(m) if m <= n => vec![m],
        Some(_) => vec![],
        None => (0..=n).collect(),
    }
}

pub fn table(kind: TableKind, params: &Params) -> Result<Outcome, CliError> {
    let n = need(&params.n, "n")?;
    if let Some(m) = params.m {
        if m > n {
            return Err(usage(format!("--m {m} exceeds --n {n}")));
        }
    }
    let mut base = Fields::default();
    let mut rows: Vec<Fields> = Vec::new();
    let mut triangle = |f: &dyn Fn(usize, usize) -> Rational| {
        for row in 0..=n {
            for m in m_range(params, row) {
                let mut v = Fields::default();
                v.push("n", row);
                v.push("m", m);
                v.push("value", f(row, m));
                rows.push(v);
            }
        }
    };
    let name = match kind {
        TableKind::Stirling2 => {
            triangle(&stirling2);
            "stirling2"
        }
        TableKind::Stirling1 => {
            triangle(&stirling1);
            "stirling1"
        }
        TableKind::Sy => {
            let dist = need(&params.dist, "dist")?;
            let x = single_x(params, Rational::zero())?;
            triangle(&|row, m| sy(&dist, row, m, &x));
            base.push("dist", &dist);
            base.push("x", &x);
            "sy"
        }
        TableKind::Cnn => {
            let upper = need(&params.upper, "N")?;
            base.push("n", n);
            base.push("N", upper);
            for (k, c) in cnn_table(n, upper).values.iter().enumerate() {
                let mut v = Fields::default();
                v.push("k", k);
                v.push("value", c);
                rows.push(v);
            }
            "cnn"
        }
        TableKind::Bell => {
            let x = single_x(params, Rational::one())?;
            base.push("x", &x);
            for row in 0..=n {
                let mut v = Fields::default();
                v.push("n", row);
                v.push("value", bell_poly(row, &x));
                rows.push(v);
            }
            "bell"
        }
    };
    let records = rows
        .into_iter()
        .map(|values| OutputRecord::new(RecordKind::Table, name, base.clone(), values, None))
        .collect();
    Ok(Outcome {
        records,
        failures: vec![],
        summary: None,
    })
}

fn sweep<F>(n_max: usize, upper_max: usize, mut f: F) -> Result<Vec<IdentityReport>, CliError>
where
    F: FnMut(usize, usize) -> Result<Vec<IdentityReport>, CliError>,
{
    let mut out = Vec::new();
    for n in 0..=n_max {
        for upper in 0..=upper_max {
            out.extend(f(n, upper)?);
        }
    }
    Ok(out)
}

fn path_reports(dist: &DistributionSpec, n: usize, m: usize, x: &Rational) -> Result<Vec<IdentityReport>, CliError> {
    let params = vec![
        ("dist".to_string(), dist.to_string()),
        ("n".to_string(), n.to_string()),
        ("m".to_string(), m.to_string()),
        ("x".to_string(), x.to_string()),
    ];
    let base = sy(dist, n, m, x);
    let mut out = vec![IdentityReport::new(
        "paths",
        params.clone(),
        base.clone(),
        sy_via_factorial(dist, n, m, x),
        sy_via_gf(dist, n, m, x),
    )];
    if m <= UNIFORM_REP_MAX_M {
        let u = sy_via_uniform_rep(dist, n, m, x)?;
        out.push(IdentityReport::new(
            "paths-uniform",
            params.clone(),
            base.clone(),
            u.clone(),
            u,
        ));
    }
    if let Some(closed) = sy_closed_form(dist, n, m, x) {
        let c = closed?;
        out.push(IdentityReport::new("paths-closed", params, base, c.clone(), c));
    }
    Ok(out)
}

pub fn verify(suite: Suite, params: &Params) -> Result<Outcome, CliError> {
    let n_max = params.n_max.unwrap_or(DEFAULT_N_MAX);
    let upper_max = params.upper_max.unwrap_or(DEFAULT_UPPER_MAX);
    let xs = xs(params);
    let reports = match suite {
        Suite::Corollary8 => {
            let dist = need(&params.dist, "dist")?;
            sweep(n_max, upper_max, |n, upper| {
                Ok(xs.iter().map(|x| corollary8_report(&dist, n, upper, x)).collect())
            })?
        }
        Suite::Theorem1 => sweep(n_max, upper_max, |n, upper| {
            Ok(xs.iter().flat_map(|x| theorem1_reports(n, upper, x)).collect())
        })?,
        Suite::Theorem9 => sweep(n_max, upper_max, |n, upper| Ok(vec![theorem9_report(n, upper)]))?,
        Suite::Theorem10 => {
            let lambda = params.lambda.clone().unwrap_or_else(Rational::one);
            sweep(n_max, upper_max, |n, upper| {
                Ok(vec![theorem10_report(n, upper, &lambda)?])
            })?
        }
        Suite::Theorem11 => {
            let q = params.q.clone().unwrap_or_else(|| Rational::new(1, 2));
            sweep(n_max, upper_max, |n, upper| Ok(vec![theorem11_report(n, upper, &q)?]))?
        }
        Suite::Theorem12 => {
            let family = need(&params.family, "family")?;
            let seed = AppellSeed::family(&family, n_max)?;
            sweep(n_max, upper_max, |n, upper| {
                if upper < n {
                    return Ok(vec![]);
                }
                xs.iter().map(|x| Ok(theorem12_check(&seed, n, upper, x)?)).collect()
            })?
        }
        Suite::BernoulliClassic => sweep(n_max, upper_max, |n, upper| {
            Ok(xs.iter().map(|x| classical_bernoulli_check(n, upper, x)).collect())
        })?,
        Suite::Gf => {
            let dist = need(&params.dist, "dist")?;
            let mut out = Vec::new();
            for n in 0..=n_max {
                for m in m_range(params, n) {
                    let poly = sy_poly(&dist, n, m)?;
                    for x in &xs {
                        let prm = vec![
                            ("dist".to_string(), dist.to_string()),
                            ("n".to_string(), n.to_string()),
                            ("m".to_string(), m.to_string()),
                            ("x".to_string(), x.to_string()),
                        ];
                        out.push(IdentityReport::new(
                            "gf",
                            prm,
                            sy(&dist, n, m, x),
                            sy_via_gf(&dist, n, m, x),
                            poly.eval(x),
                        ));
                    }
                }
            }
            out
        }
        Suite::Paths => {
            let dist = need(&params.dist, "dist")?;
            let mut out = Vec::new();
            for n in 0..=n_max {
                for m in m_range(params, n) {
                    for x in &xs {
                        out.extend(path_reports(&dist, n, m, x)?);
                    }
                }
            }
            out
        }
    };
    let failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| {
            let prm: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!(
                "FAIL {} {}: lhs={} middle={} rhs={}",
                r.identity,
                prm.join(" "),
                r.lhs,
                r.middle,
                r.rhs
            )
        })
        .collect();
    let summary = format!(
        "{}: {} of {} identities hold",
        suite_name(suite),
        reports.len() - failures.len(),
        reports.len()
    );
    Ok(Outcome {
        records: reports.iter().map(OutputRecord::from_report).collect(),
        failures,
        summary: Some(summary),
    })
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Corollary8 => "corollary8",
        Suite::Theorem1 => "theorem1",
        Suite::Theorem9 => "theorem9",
        Suite::Theorem10 => "theorem10",
        Suite::Theorem11 => "theorem11",
        Suite::Theorem12 => "theorem12",
        Suite::Gf => "gf",
        Suite::Paths => "paths",
        Suite::BernoulliClassic => "bernoulli-classic",
    }
}

pub fn mc_check(params: &Params) -> Result<Outcome, CliError> {
    let dist = need(&params.dist, "dist")?;
    let k_max = params.k_max.unwrap_or(3);
    let n_max = params.n_max.unwrap_or(5);
    let samples = params.samples.unwrap_or(1_000_000);
    let seed = params.seed.unwrap_or(0);
    let z = params.z.unwrap_or(6.0);
    if !(z.is_finite() && z > 0.0) {
        return Err(usage(format!("--z must be positive, got {z}")));
    }
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for k in 0..=k_max {
        for n in 0..=n_max {
            let check = check_moment_detailed(&dist, k, n, samples, seed, z)?;
            let mut prm = Fields::default();
            prm.push("dist", &dist);
            prm.push("k", k);
            prm.push("n", n);
            prm.push("samples", samples);
            prm.push("seed", seed);
            prm.push("z", z);
            let mut values = Fields::default();
            values.push("estimate", check.estimate.mean);
            values.push("stderr", check.estimate.stderr);
            values.push("exact", sum_moment(&dist, k, n));
            if !check.pass {
                failures.push(format!(
                    "FAIL mc-check dist={dist} k={k} n={n}: estimate={} stderr={} exact={}",
                    check.estimate.mean, check.estimate.stderr, check.exact
                ));
            }
            records.push(OutputRecord::new(
                RecordKind::Mc,
                "mc-check",
                prm,
                values,
                Some(check.pass),
            ));
        }
    }
    let summary = format!(
        "mc-check: {} of {} estimates within {z} stderr",
        records.len() - failures.len(),
        records.len()
    );
    Ok(Outcome {
        records,
        failures,
        summary: Some(summary),
    })
}

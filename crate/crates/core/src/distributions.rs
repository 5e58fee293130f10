//! Catalog of random variables with exact rational moment sequences, and exact
//! moments of partial sums `S_k = Y_1 + ... + Y_k` of independent copies.
//!
//! Every catalog member has a finite moment generating function near the
//! origin: the bounded laws trivially, Poisson and geometric because their
//! tails decay geometrically, the exponential for `|r| < 1`, the normal
//! everywhere, and `U T` because `|U T| <= T`.
//!
//! # Text syntax
//!
//! `const:α`, `bernoulli:p`, `poisson:λ`, `geom:q`, `exp`, `uniform`, `normal`,
//! `ut`, `finite:v1:p1,v2:p2,...`, `shift:c:<base>`. Rationals are written as
//! integers or `num/den`.

use std::fmt;
use std::str::FromStr;

use crate::combinat::{bell_poly, binomial, double_factorial, factorial};
use crate::error::{Error, Result};
use crate::polylog::li_neg;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum DistributionSpec {
    /// Point mass at `α`.
    Constant(Rational),
    /// `P(Y = 1) = p = 1 - P(Y = 0)`, `0 < p <= 1`.
    Bernoulli(Rational),
    /// Poisson with mean `λ >= 0`.
    Poisson(Rational),
    /// `P(Y = j) = (1 - q) q^j` on `j >= 0`, `0 < q < 1`.
    Geometric(Rational),
    /// Unit-rate exponential.
    Exponential,
    /// Uniform on `[0, 1]`.
    Uniform01,
    /// Standard normal.
    StdNormal,
    /// `U T` with `U` uniform on `[0, 1]` and `T` unit exponential, independent.
    UniformTimesExponential,
    /// Finitely many `(value, probability)` atoms.
    FiniteSupport(Vec<(Rational, Rational)>),
    /// `base + c`.
    Shifted(Box<DistributionSpec>, Rational),
}

impl DistributionSpec {
    pub fn constant(alpha: Rational) -> Self {
        DistributionSpec::Constant(alpha)
    }

    pub fn bernoulli(p: Rational) -> Result<Self> {
        let d = DistributionSpec::Bernoulli(p);
        d.validate()?;
        Ok(d)
    }

    pub fn poisson(lambda: Rational) -> Result<Self> {
        let d = DistributionSpec::Poisson(lambda);
        d.validate()?;
        Ok(d)
    }

    pub fn geometric(q: Rational) -> Result<Self> {
        let d = DistributionSpec::Geometric(q);
        d.validate()?;
        Ok(d)
    }

    pub fn finite(atoms: Vec<(Rational, Rational)>) -> Result<Self> {
        let d = DistributionSpec::FiniteSupport(atoms);
        d.validate()?;
        Ok(d)
    }

    pub fn shifted(base: DistributionSpec, c: Rational) -> Self {
        DistributionSpec::Shifted(Box::new(base), c)
    }

    /// Checks the parameter constraints of every kind, recursively.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        match self {
            DistributionSpec::Bernoulli(p) => {
                if !p.is_positive() || *p > Rational::one() {
                    return bad(format!("bernoulli needs 0 < p <= 1, got {p}"));
                }
            }
            DistributionSpec::Poisson(l) => {
                if l.is_negative() {
                    return bad(format!("poisson needs λ >= 0, got {l}"));
                }
            }
            DistributionSpec::Geometric(q) => {
                if !q.is_positive() || *q >= Rational::one() {
                    return bad(format!("geometric needs 0 < q < 1, got {q}"));
                }
            }
            DistributionSpec::FiniteSupport(atoms) => {
                if atoms.is_empty() {
                    return bad("finite law needs at least one atom".into());
                }
                if let Some((_, p)) = atoms.iter().find(|(_, p)| !p.is_positive()) {
                    return bad(format!("finite law has non-positive probability {p}"));
                }
                let total: Rational = atoms.iter().map(|(_, p)| p).sum();
                if !total.is_one() {
                    return bad(format!("finite law probabilities sum to {total}"));
                }
            }
            DistributionSpec::Shifted(base, _) => base.validate()?,
            _ => {}
        }
        Ok(())
    }

    /// Exact `E[Y]`.
    pub fn mean(&self) -> Rational {
        moment(self, 1)
    }
}

/// Exact raw moment `E[Y^n]`.
pub fn moment(dist: &DistributionSpec, n: usize) -> Rational {
    use DistributionSpec::*;
    if n == 0 {
        return Rational::one();
    }
    match dist {
        Constant(a) => a.pow(n),
        Bernoulli(p) => p.clone(),
        Poisson(l) => bell_poly(n, l),
        Geometric(q) => (Rational::one() - q) * li_neg(n, q).expect("validated geometric"),
        Exponential => factorial(n),
        Uniform01 => Rational::from(n + 1).recip(),
        StdNormal => {
            if n % 2 == 1 {
                Rational::zero()
            } else {
                double_factorial(n - 1)
            }
        }
        UniformTimesExponential => factorial(n) / Rational::from(n + 1),
        FiniteSupport(atoms) => atoms.iter().map(|(v, p)| p * v.pow(n)).sum(),
        Shifted(base, c) => (0..=n)
            .map(|j| binomial(n, j as i64) * c.pow(n - j) * moment(base, j))
            .sum(),
    }
}

/// Growable cache of `E[Y^n]`.
#[derive(Clone, Debug)]
pub struct MomentSequence {
    dist: DistributionSpec,
    cache: Vec<Rational>,
}

impl MomentSequence {
    pub fn new(dist: DistributionSpec) -> Self {
        MomentSequence {
            dist,
            cache: vec![Rational::one()],
        }
    }

    pub fn dist(&self) -> &DistributionSpec {
        &self.dist
    }

    pub fn get(&mut self, n: usize) -> Rational {
        while self.cache.len() <= n {
            let next = moment(&self.dist, self.cache.len());
            self.cache.push(next);
        }
        self.cache[n].clone()
    }
}

/// Memoized triangle of `E[S_k^n]`, grown by binomial convolution:
/// `E[S_k^n] = sum_j C(n,j) E[S_{k-1}^j] E[Y^(n-j)]`, with `S_0 = 0`.
#[derive(Clone, Debug)]
pub struct SumMoments {
    moments: MomentSequence,
    // rows[k][n] = E[S_k^n]
    rows: Vec<Vec<Rational>>,
}

impl SumMoments {
    pub fn new(dist: DistributionSpec) -> Self {
        SumMoments {
            moments: MomentSequence::new(dist),
            rows: vec![vec![Rational::one()]],
        }
    }

    pub fn dist(&self) -> &DistributionSpec {
        self.moments.dist()
    }

    /// `E[S_k^n]`.
    pub fn get(&mut self, k: usize, n: usize) -> Rational {
        self.ensure(k, n);
        self.rows[k][n].clone()
    }

    fn ensure(&mut self, k: usize, n: usize) {
        for i in 0..=k {
            if i == self.rows.len() {
                self.rows.push(Vec::new());
            }
            while self.rows[i].len() <= n {
                let deg = self.rows[i].len();
                let v = if i == 0 {
                    Rational::zero() // deg >= 1 here
                } else {
                    (0..=deg)
                        .map(|j| binomial(deg, j as i64) * &self.rows[i - 1][j] * self.moments.get(deg - j))
                        .sum()
                };
                self.rows[i].push(v);
            }
        }
    }

    /// `E[(x + S_k)^n] = sum_j C(n,j) x^(n-j) E[S_k^j]`.
    pub fn shifted(&mut self, k: usize, n: usize, x: &Rational) -> Rational {
        self.ensure(k, n);
        let row = &self.rows[k];
        (0..=n).map(|j| binomial(n, j as i64) * x.pow(n - j) * &row[j]).sum()
    }
}

/// `E[S_k^n]` for the sum of `k` independent copies.
pub fn sum_moment(dist: &DistributionSpec, k: usize, n: usize) -> Rational {
    SumMoments::new(dist.clone()).get(k, n)
}

/// `E[(x + S_k)^n]`.
pub fn shifted_sum_moment(dist: &DistributionSpec, k: usize, n: usize, x: &Rational) -> Rational {
    SumMoments::new(dist.clone()).shifted(k, n, x)
}

impl fmt::Display for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use DistributionSpec::*;
        match self {
            Constant(a) => write!(f, "const:{a}"),
            Bernoulli(p) => write!(f, "bernoulli:{p}"),
            Poisson(l) => write!(f, "poisson:{l}"),
            Geometric(q) => write!(f, "geom:{q}"),
            Exponential => write!(f, "exp"),
            Uniform01 => write!(f, "uniform"),
            StdNormal => write!(f, "normal"),
            UniformTimesExponential => write!(f, "ut"),
            FiniteSupport(atoms) => {
                let parts: Vec<String> = atoms.iter().map(|(v, p)| format!("{v}:{p}")).collect();
                write!(f, "finite:{}", parts.join(","))
            }
            Shifted(base, c) => write!(f, "shift:{c}:{base}"),
        }
    }
}

impl fmt::Debug for DistributionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for DistributionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = match s.split_once(':') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let param = |what: &str| -> Result<Rational> {
            rest.ok_or_else(|| Error::Parse(format!("`{head}` needs a parameter ({what})")))?
                .parse()
        };
        let no_param = |d: DistributionSpec| -> Result<DistributionSpec> {
            match rest {
                None => Ok(d),
                Some(_) => Err(Error::Parse(format!("`{head}` takes no parameter"))),
            }
        };
        let dist = match head {
            "const" => DistributionSpec::constant(param("α")?),
            "bernoulli" => DistributionSpec::bernoulli(param("p")?)?,
            "poisson" => DistributionSpec::poisson(param("λ")?)?,
            "geom" => DistributionSpec::geometric(param("q")?)?,
            "exp" => no_param(DistributionSpec::Exponential)?,
            "uniform" => no_param(DistributionSpec::Uniform01)?,
            "normal" => no_param(DistributionSpec::StdNormal)?,
            "ut" => no_param(DistributionSpec::UniformTimesExponential)?,
            "finite" => {
                let body = rest.ok_or_else(|| Error::Parse("`finite` needs atoms".into()))?;
                let atoms = body
                    .split(',')
                    .map(|atom| {
                        let (v, p) = atom
                            .split_once(':')
                            .ok_or_else(|| Error::Parse(format!("atom `{atom}` is not value:prob")))?;
                        Ok((v.parse()?, p.parse()?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                DistributionSpec::finite(atoms)?
            }
            "shift" => {
                let body = rest.ok_or_else(|| Error::Parse("`shift` needs c:<base>".into()))?;
                let (c, base) = body
                    .split_once(':')
                    .ok_or_else(|| Error::Parse("`shift` needs c:<base>".into()))?;
                DistributionSpec::shifted(base.parse()?, c.parse()?)
            }
            other => return Err(Error::Parse(format!("unknown distribution `{other}`"))),
        };
        Ok(dist)
    }
}

//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! inputs may be `int`, `Fraction` or a `"num/den"` string. Floats are
//! rejected.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::sync::PyOnceLock;
use pyo3::types::{PyDict, PyFloat};

use pstirling::appell::{theorem12_check, AppellSeed, AppellSequence};
use pstirling::cnn::{cnn_alternating, cnn_table};
use pstirling::combinat::{bell_poly, stirling1, stirling2, stirling2_poly};
use pstirling::distributions::{moment, shifted_sum_moment};
use pstirling::gen_stirling::{sy_by_path, Path};
use pstirling::montecarlo;
use pstirling::polylog::{li_conv_direct, li_conv_prob, li_neg};
use pstirling::sums;
use pstirling::{DistributionSpec, Polynomial, Rational};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyValueError::new_err(
            "floats are not exact; pass an int, Fraction or 'num/den' string",
        ));
    }
    obj.str()?.to_str()?.parse().map_err(value_err)
}

fn opt_rational(obj: Option<&Bound<'_, PyAny>>) -> PyResult<Rational> {
    obj.map_or_else(|| Ok(Rational::zero()), to_rational)
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    static FRACTION: PyOnceLock<Py<PyAny>> = PyOnceLock::new();
    let cls = FRACTION.get_or_try_init(py, || py.import("fractions")?.getattr("Fraction").map(Bound::unbind))?;
    cls.bind(py).call1((r.to_string(),))
}

fn fractions<'py>(py: Python<'py>, values: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    values.iter().map(|v| fraction(py, v)).collect()
}

/// A step law `Y`, built from the same syntax as the command line:
/// `exp`, `uniform`, `normal`, `ut`, `const:a`, `bernoulli:p`, `poisson:l`,
/// `geom:q`, `finite:v:p,...`, `shift:c:<law>`.
#[pyclass(frozen, module = "pystirling", name = "Distribution")]
struct PyDistribution {
    inner: DistributionSpec,
}

#[pymethods]
impl PyDistribution {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(PyDistribution {
            inner: spec.parse().map_err(value_err)?,
        })
    }

    /// `E Y^n`.
    fn moment<'py>(&self, py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &moment(&self.inner, n))
    }

    /// `E (x + S_k)^n`.
    #[pyo3(signature = (k, n, x=None))]
    fn sum_moment<'py>(
        &self,
        py: Python<'py>,
        k: usize,
        n: usize,
        x: Option<&Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &shifted_sum_moment(&self.inner, k, n, &opt_rational(x)?))
    }

    fn mean<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.mean())
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Distribution('{}')", self.inner)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.inner.to_string().hash(&mut h);
        h.finish()
    }
}

#[pyclass(frozen, module = "pystirling", name = "IdentityReport")]
struct PyIdentityReport {
    inner: sums::IdentityReport,
}

impl From<sums::IdentityReport> for PyIdentityReport {
    fn from(inner: sums::IdentityReport) -> Self {
        PyIdentityReport { inner }
    }
}

#[pymethods]
impl PyIdentityReport {
    #[getter]
    fn identity(&self) -> &str {
        &self.inner.identity
    }

    #[getter]
    fn params<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (k, v) in &self.inner.params {
            d.set_item(k, v)?;
        }
        Ok(d)
    }

    #[getter]
    fn lhs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.lhs)
    }

    #[getter]
    fn middle<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.middle)
    }

    #[getter]
    fn rhs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.rhs)
    }

    #[getter]
    fn passed(&self) -> bool {
        self.inner.pass
    }

    fn __bool__(&self) -> bool {
        self.inner.pass
    }

    fn __repr__(&self) -> String {
        let r = &self.inner;
        format!(
            "IdentityReport({}, lhs={}, middle={}, rhs={}, pass={})",
            r.identity, r.lhs, r.middle, r.rhs, r.pass
        )
    }
}

#[pyclass(frozen, module = "pystirling", name = "SampleEstimate")]
struct PySampleEstimate {
    #[pyo3(get)]
    mean: f64,
    #[pyo3(get)]
    stderr: f64,
    #[pyo3(get)]
    samples: u64,
    #[pyo3(get)]
    seed: u64,
}

#[pymethods]
impl PySampleEstimate {
    fn __repr__(&self) -> String {
        format!(
            "SampleEstimate(mean={}, stderr={}, samples={}, seed={})",
            self.mean, self.stderr, self.samples, self.seed
        )
    }
}

#[pyfunction]
#[pyo3(name = "stirling2")]
fn py_stirling2<'py>(py: Python<'py>, n: usize, m: usize) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &stirling2(n, m))
}

/// Signed Stirling numbers of the first kind.
#[pyfunction]
#[pyo3(name = "stirling1")]
fn py_stirling1<'py>(py: Python<'py>, n: usize, k: usize) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &stirling1(n, k))
}

#[pyfunction]
#[pyo3(name = "stirling2_poly")]
fn py_stirling2_poly<'py>(py: Python<'py>, n: usize, m: usize, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &stirling2_poly(n, m, &to_rational(x)?))
}

/// Touchard polynomial `sum_j S(n, j) x^j`.
#[pyfunction]
fn bell<'py>(py: Python<'py>, n: usize, x: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bell_poly(n, &to_rational(x)?))
}

#[pyfunction]
#[pyo3(name = "cnn_table")]
fn py_cnn_table<'py>(py: Python<'py>, n: usize, upper: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    fractions(py, &cnn_table(n, upper).values)
}

#[pyfunction]
#[pyo3(name = "cnn_alternating")]
fn py_cnn_alternating<'py>(py: Python<'py>, n: usize, upper: usize, k: usize) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &cnn_alternating(n, upper, k).map_err(value_err)?)
}

fn parse_path(name: &str) -> PyResult<Path> {
    Path::ALL
        .into_iter()
        .find(|p| p.name() == name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown path `{name}`")))
}

/// `S_Y(n, m; x)` along one computation path. Returns `None` for
/// `path="closed-form"` when no closed form applies.
#[pyfunction]
#[pyo3(signature = (dist, n, m, x=None, path="alternating-sum"))]
fn sy<'py>(
    py: Python<'py>,
    dist: &PyDistribution,
    n: usize,
    m: usize,
    x: Option<&Bound<'py, PyAny>>,
    path: &str,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let res = sy_by_path(parse_path(path)?, &dist.inner, n, m, &opt_rational(x)?).map_err(value_err)?;
    res.map(|r| fraction(py, &r.value)).transpose()
}

/// Coefficients (constant term first) of `x -> S_Y(n, m; x)`.
#[pyfunction]
fn sy_poly<'py>(py: Python<'py>, dist: &PyDistribution, n: usize, m: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let p = pstirling::gen_stirling::sy_poly(&dist.inner, n, m).map_err(value_err)?;
    fractions(py, p.coeffs())
}

/// `(sum_direct, sum_via_stirling, sum_via_cnn)`.
#[pyfunction]
#[pyo3(signature = (dist, n, upper, x=None))]
fn power_sums<'py>(
    py: Python<'py>,
    dist: &PyDistribution,
    n: usize,
    upper: usize,
    x: Option<&Bound<'py, PyAny>>,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let x = opt_rational(x)?;
    Ok((
        fraction(py, &sums::sum_direct(&dist.inner, n, upper, &x))?,
        fraction(py, &sums::sum_via_stirling(&dist.inner, n, upper, &x))?,
        fraction(py, &sums::sum_via_cnn(&dist.inner, n, upper, &x))?,
    ))
}

#[pyfunction]
#[pyo3(signature = (dist, n_max, upper_max, xs=None))]
fn verify_corollary8(
    dist: &PyDistribution,
    n_max: usize,
    upper_max: usize,
    xs: Option<Vec<Bound<'_, PyAny>>>,
) -> PyResult<Vec<PyIdentityReport>> {
    let xs: Vec<Rational> = match xs {
        Some(v) => v.iter().map(to_rational).collect::<PyResult<_>>()?,
        None => vec![Rational::zero()],
    };
    Ok(sums::verify_corollary8(&dist.inner, n_max, upper_max, &xs)
        .into_iter()
        .map(Into::into)
        .collect())
}

/// Polynomial sum identity for `p` given by coefficients, constant term first.
#[pyfunction]
#[pyo3(signature = (coeffs, dist, upper, x=None))]
fn sum_poly(
    coeffs: Vec<Bound<'_, PyAny>>,
    dist: &PyDistribution,
    upper: usize,
    x: Option<&Bound<'_, PyAny>>,
) -> PyResult<PyIdentityReport> {
    let p = Polynomial::new(coeffs.iter().map(to_rational).collect::<PyResult<_>>()?);
    Ok(sums::sum_poly(&p, &dist.inner, upper, &opt_rational(x)?)
        .map_err(value_err)?
        .into())
}

#[pyfunction]
#[pyo3(signature = (n, upper, x=None))]
fn bernoulli_classic(n: usize, upper: usize, x: Option<&Bound<'_, PyAny>>) -> PyResult<PyIdentityReport> {
    Ok(sums::classical_bernoulli_check(n, upper, &opt_rational(x)?).into())
}

/// Coefficients of the `n`-th polynomial of an Appell family
/// (`bernoulli`, `euler`, `hermite`, `moment:<law>`), constant term first.
#[pyfunction]
fn appell_polynomial<'py>(py: Python<'py>, family: &str, n: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let seed = AppellSeed::family(family, n).map_err(value_err)?;
    let p = AppellSequence::new(seed).polynomial(n).map_err(value_err)?;
    fractions(py, p.coeffs())
}

#[pyfunction]
#[pyo3(signature = (family, n, upper, x=None))]
fn theorem12(family: &str, n: usize, upper: usize, x: Option<&Bound<'_, PyAny>>) -> PyResult<PyIdentityReport> {
    let seed = AppellSeed::family(family, n).map_err(value_err)?;
    Ok(theorem12_check(&seed, n, upper, &opt_rational(x)?)
        .map_err(value_err)?
        .into())
}

#[pyfunction]
#[pyo3(name = "li_neg")]
fn py_li_neg<'py>(py: Python<'py>, n: usize, q: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &li_neg(n, &to_rational(q)?).map_err(value_err)?)
}

/// `(direct multinomial convolution, geometric-moment form)`.
#[pyfunction]
fn li_conv<'py>(
    py: Python<'py>,
    n: usize,
    k: usize,
    q: &Bound<'py, PyAny>,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let q = to_rational(q)?;
    Ok((
        fraction(py, &li_conv_direct(n, k, &q).map_err(value_err)?)?,
        fraction(py, &li_conv_prob(n, k, &q).map_err(value_err)?)?,
    ))
}

#[pyfunction]
fn estimate_sum_moment(
    py: Python<'_>,
    dist: &PyDistribution,
    k: usize,
    n: usize,
    samples: u64,
    seed: u64,
) -> PyResult<PySampleEstimate> {
    let e = py
        .detach(|| montecarlo::estimate_sum_moment(&dist.inner, k, n, samples, seed))
        .map_err(value_err)?;
    Ok(PySampleEstimate {
        mean: e.mean,
        stderr: e.stderr,
        samples: e.samples,
        seed: e.seed,
    })
}

#[pyfunction]
#[pyo3(signature = (dist, k, n, samples, seed, z=6.0))]
fn check_moment(
    py: Python<'_>,
    dist: &PyDistribution,
    k: usize,
    n: usize,
    samples: u64,
    seed: u64,
    z: f64,
) -> PyResult<bool> {
    py.detach(|| montecarlo::check_moment(&dist.inner, k, n, samples, seed, z))
        .map_err(value_err)
}

#[pymodule]
pub fn pystirling(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyDistribution>()?;
    m.add_class::<PyIdentityReport>()?;
    m.add_class::<PySampleEstimate>()?;
    m.add_function(wrap_pyfunction!(py_stirling2, m)?)?;
    m.add_function(wrap_pyfunction!(py_stirling1, m)?)?;
    m.add_function(wrap_pyfunction!(py_stirling2_poly, m)?)?;
    m.add_function(wrap_pyfunction!(bell, m)?)?;
    m.add_function(wrap_pyfunction!(py_cnn_table, m)?)?;
    m.add_function(wrap_pyfunction!(py_cnn_alternating, m)?)?;
    m.add_function(wrap_pyfunction!(sy, m)?)?;
    m.add_function(wrap_pyfunction!(sy_poly, m)?)?;
    m.add_function(wrap_pyfunction!(power_sums, m)?)?;
    m.add_function(wrap_pyfunction!(verify_corollary8, m)?)?;
    m.add_function(wrap_pyfunction!(sum_poly, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_classic, m)?)?;
    m.add_function(wrap_pyfunction!(appell_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(theorem12, m)?)?;
    m.add_function(wrap_pyfunction!(py_li_neg, m)?)?;
    m.add_function(wrap_pyfunction!(li_conv, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_sum_moment, m)?)?;
    m.add_function(wrap_pyfunction!(check_moment, m)?)?;
    Ok(())
}

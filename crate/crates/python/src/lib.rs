//! Python bindings. Exact rationals cross the boundary as `fractions.Fraction`
//! and big integers as `int`.

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::sync::PyOnceLock;
use pyo3::types::PyType;

use franel::bernoulli;
use franel::certificates::{self, TheoremKind};
use franel::lattice;
use franel::{Error, Rational};

fn to_py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

static FRACTION: PyOnceLock<Py<PyType>> = PyOnceLock::new();

fn fraction<'py>(py: Python<'py>, value: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let cls = FRACTION.import(py, "fractions", "Fraction")?;
    cls.call1((value.numer().clone(), value.denom().clone()))
}

/// Accepts `int`, `Fraction` or anything exposing integer `numerator`/`denominator`.
fn from_py_rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let num: BigInt = value.getattr("numerator")?.extract()?;
    let den: BigInt = value.getattr("denominator")?.extract()?;
    if den == BigInt::from(0) {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

fn theorem_kind(theorem: &str, k: Option<usize>, n: Option<usize>) -> PyResult<TheoremKind> {
    let need = |v: Option<usize>, name: &str| {
        v.ok_or_else(|| PyValueError::new_err(format!("theorem {theorem:?} requires {name}")))
    };
    match theorem {
        "mcintosh" => Ok(TheoremKind::McIntosh4),
        "general" => TheoremKind::general_even(need(k, "k")?).map_err(to_py_err),
        "higher" => TheoremKind::higher(need(k, "k")?, need(n, "n")?).map_err(to_py_err),
        other => Err(PyValueError::new_err(format!(
            "unknown theorem {other:?}; expected mcintosh, general or higher"
        ))),
    }
}

#[pyclass(name = "IntegralSpec", module = "franel_py", frozen)]
struct PyIntegralSpec {
    inner: franel::IntegralSpec,
}

#[pymethods]
impl PyIntegralSpec {
    #[new]
    fn new(index: usize, multipliers: Vec<u64>) -> PyResult<Self> {
        let inner = franel::IntegralSpec::new(index, multipliers).map_err(to_py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn index(&self) -> usize {
        self.inner.index()
    }

    #[getter]
    fn multipliers(&self) -> Vec<u64> {
        self.inner.multipliers().to_vec()
    }

    fn integral<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let value = py.detach(|| franel::franel_integral(&self.inner));
        fraction(py, &value)
    }

    fn normalized_integral<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &franel::franel::franel_integral_normalized(&self.inner))
    }

    fn breakpoints<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        franel::franel::breakpoints(&self.inner)
            .points()
            .iter()
            .map(|p| fraction(py, p))
            .collect()
    }

    fn pi_coefficient<'py>(&self, py: Python<'py>) -> PyResult<(Bound<'py, PyAny>, u32)> {
        let (c, p) = lattice::pi_coefficient(&self.inner).map_err(to_py_err)?;
        Ok((fraction(py, &c)?, p))
    }

    fn convergence_report(
        &self,
        py: Python<'_>,
        bounds: Vec<u64>,
    ) -> PyResult<Vec<PyLatticeSumResult>> {
        let results = py
            .detach(|| lattice::convergence_report(&self.inner, &bounds))
            .map_err(to_py_err)?;
        Ok(results
            .into_iter()
            .map(|inner| PyLatticeSumResult { inner })
            .collect())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "IntegralSpec(index={}, multipliers={:?})",
            self.inner.index(),
            self.inner.multipliers()
        )
    }
}

#[pyclass(name = "CertificateReport", module = "franel_py", frozen)]
struct PyCertificateReport {
    inner: certificates::CertificateReport,
}

#[pymethods]
impl PyCertificateReport {
    #[getter]
    fn theorem(&self) -> String {
        self.inner.kind.to_string()
    }

    #[getter]
    fn tuple(&self) -> Vec<u64> {
        self.inner.spec.multipliers().to_vec()
    }

    #[getter]
    fn index(&self) -> usize {
        self.inner.spec.index()
    }

    #[getter]
    fn multiplier<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.multiplier)
    }

    #[getter]
    fn integral<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.integral)
    }

    #[getter]
    fn product<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.product)
    }

    #[getter]
    fn is_integer(&self) -> bool {
        self.inner.is_integer
    }

    #[getter]
    fn constant_part(&self) -> BigInt {
        self.inner.constant_part.clone().into()
    }

    #[getter]
    fn gcd_part<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = Rational::new(
            self.inner.gcd_part_num.clone().into(),
            self.inner.gcd_part_den.clone().into(),
        );
        fraction(py, &r)
    }

    fn __repr__(&self) -> String {
        format!(
            "CertificateReport(theorem={}, tuple={:?}, product={}, is_integer={})",
            self.inner.kind,
            self.inner.spec.multipliers(),
            self.inner.product,
            if self.inner.is_integer {
                "True"
            } else {
                "False"
            }
        )
    }
}

#[pyclass(name = "LatticeSumResult", module = "franel_py", frozen)]
struct PyLatticeSumResult {
    inner: lattice::LatticeSumResult,
}

#[pymethods]
impl PyLatticeSumResult {
    #[getter]
    fn bound(&self) -> u64 {
        self.inner.bound
    }

    #[getter]
    fn truncated<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.truncated)
    }

    #[getter]
    fn predicted_coefficient<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.predicted_coefficient)
    }

    #[getter]
    fn pi_power(&self) -> u32 {
        self.inner.pi_power
    }

    #[getter]
    fn float_discrepancy(&self) -> f64 {
        self.inner.float_discrepancy
    }

    #[getter]
    fn predicted_value(&self) -> f64 {
        self.inner.predicted_value()
    }

    #[getter]
    fn relative_error(&self) -> f64 {
        self.inner.relative_error()
    }

    fn __repr__(&self) -> String {
        format!(
            "LatticeSumResult(bound={}, relative_error={:e})",
            self.inner.bound,
            self.inner.relative_error()
        )
    }
}

/// Exact integral over [0, 1] of the product of periodic Bernoulli functions.
#[pyfunction]
fn franel_integral<'py>(
    py: Python<'py>,
    index: usize,
    multipliers: Vec<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    PyIntegralSpec::new(index, multipliers)?.integral(py)
}

#[pyfunction]
fn bernoulli_number<'py>(py: Python<'py>, n: usize) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bernoulli::bernoulli_number(n))
}

/// Coefficients of B_n(x), constant term first.
#[pyfunction]
fn bernoulli_polynomial<'py>(py: Python<'py>, n: usize) -> PyResult<Vec<Bound<'py, PyAny>>> {
    bernoulli::bernoulli_polynomial(n)
        .coeffs()
        .iter()
        .map(|c| fraction(py, c))
        .collect()
}

#[pyfunction]
fn periodic_bernoulli<'py>(
    py: Python<'py>,
    n: usize,
    x: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    let value = bernoulli::periodic_bernoulli_eval(n, &from_py_rational(x)?).map_err(to_py_err)?;
    fraction(py, &value)
}

#[pyfunction]
fn general_constant(n: usize) -> PyResult<BigInt> {
    bernoulli::general_constant_b(n)
        .map(Into::into)
        .map_err(to_py_err)
}

/// `(beta, B)` for Bernoulli index 2k+1 and 2n factors.
#[pyfunction]
fn higher_constants(k: usize, n: usize) -> PyResult<(BigInt, BigInt)> {
    let c = bernoulli::higher_constants(k, n).map_err(to_py_err)?;
    Ok((c.beta.into(), c.big_b.into()))
}

#[pyfunction]
fn dedekind_sum<'py>(py: Python<'py>, h: i64, k: u64) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &bernoulli::dedekind_sum(h, k).map_err(to_py_err)?)
}

#[pyfunction]
fn gcd_product(m: usize, tuple: Vec<u64>) -> PyResult<BigInt> {
    certificates::gcd_product(m, &tuple)
        .map(Into::into)
        .map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (theorem, tuple, k=None, n=None))]
fn certificate(
    py: Python<'_>,
    theorem: &str,
    tuple: Vec<u64>,
    k: Option<usize>,
    n: Option<usize>,
) -> PyResult<PyCertificateReport> {
    let kind = theorem_kind(theorem, k, n)?;
    let inner = py
        .detach(|| certificates::certificate(kind, &tuple))
        .map_err(to_py_err)?;
    Ok(PyCertificateReport { inner })
}

#[pyfunction]
fn sharpness_check(value: &Bound<'_, PyAny>, claimed_denominator: BigInt) -> PyResult<bool> {
    let claimed = claimed_denominator
        .to_biguint()
        .ok_or_else(|| PyValueError::new_err("claimed denominator must be non-negative"))?;
    Ok(certificates::sharpness_check(
        &from_py_rational(value)?,
        &claimed,
    ))
}

#[pyfunction]
fn truncated_reciprocal_sum<'py>(
    py: Python<'py>,
    exponent: u32,
    tuple: Vec<u64>,
    bound: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let value = py
        .detach(|| lattice::truncated_reciprocal_sum(exponent, &tuple, bound))
        .map_err(to_py_err)?;
    fraction(py, &value)
}

#[pyfunction]
fn linear_form_truncated_sum<'py>(
    py: Python<'py>,
    matrix: Vec<Vec<i64>>,
    constraint: Vec<Bound<'py, PyAny>>,
    exponent: u32,
    bound: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let c: Vec<Rational> = constraint
        .iter()
        .map(from_py_rational)
        .collect::<PyResult<_>>()?;
    let value =
        lattice::linear_form_truncated_sum(&matrix, &c, exponent, bound).map_err(to_py_err)?;
    fraction(py, &value)
}

#[pymodule]
fn franel_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyIntegralSpec>()?;
    m.add_class::<PyCertificateReport>()?;
    m.add_class::<PyLatticeSumResult>()?;
    m.add_function(wrap_pyfunction!(franel_integral, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_number, m)?)?;
    m.add_function(wrap_pyfunction!(bernoulli_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_bernoulli, m)?)?;
    m.add_function(wrap_pyfunction!(general_constant, m)?)?;
    m.add_function(wrap_pyfunction!(higher_constants, m)?)?;
    m.add_function(wrap_pyfunction!(dedekind_sum, m)?)?;
    m.add_function(wrap_pyfunction!(gcd_product, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(sharpness_check, m)?)?;
    m.add_function(wrap_pyfunction!(truncated_reciprocal_sum, m)?)?;
    m.add_function(wrap_pyfunction!(linear_form_truncated_sum, m)?)?;
    Ok(())
}

//! Python module `lerch_stokes`.

use engine::expansion::{
    exp_improved_auto, exp_improved_eval, poincare_expand, ExpansionBreakdown, TruncationSchedule,
};
use engine::mp::{CNum, PrecisionContext};
use engine::oracle::{lerch_reference, LerchParams};
use engine::stokes;
use engine::Error;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict};
use pyo3::{create_exception, wrap_pyfunction};

create_exception!(lerch_stokes, DomainError, PyValueError);
create_exception!(lerch_stokes, PoleError, DomainError);
create_exception!(lerch_stokes, ConvergenceError, PyArithmeticError);
create_exception!(lerch_stokes, TailError, PyArithmeticError);
create_exception!(lerch_stokes, PrecisionError, PyArithmeticError);

fn py_err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Domain(_) => DomainError::new_err(msg),
        Error::Pole { .. } => PoleError::new_err(msg),
        Error::Convergence { .. } => ConvergenceError::new_err(msg),
        Error::Tail { .. } => TailError::new_err(msg),
        Error::Precision { .. } => PrecisionError::new_err(msg),
    }
}

fn context(digits: u32) -> PyResult<PrecisionContext> {
    PrecisionContext::with_digits(digits).map_err(py_err)
}

/// A complex number as two decimal strings.
#[pyclass(name = "Value", module = "lerch_stokes", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyValue {
    #[pyo3(get)]
    re: String,
    #[pyo3(get)]
    im: String,
}

impl PyValue {
    fn new(z: &CNum, digits: u32) -> Self {
        let (re, im) = z.to_decimal_pair(digits as usize);
        PyValue { re, im }
    }
}

#[pymethods]
impl PyValue {
    fn __complex__<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyComplex>> {
        let parse = |s: &str| s.parse::<f64>().map_err(|e| PyValueError::new_err(e.to_string()));
        Ok(PyComplex::from_doubles(py, parse(&self.re)?, parse(&self.im)?))
    }

    fn __repr__(&self) -> String {
        format!("Value(re='{}', im='{}')", self.re, self.im)
    }
}

#[derive(Clone)]
enum Form {
    Cartesian { a_re: String, a_im: String },
    Polar { a_mod: String, theta_over_pi: String },
}

/// Parameters (λ, a, s); numbers may be given as decimal strings, fractions
/// such as "2/3", or Python numbers.
#[pyclass(name = "LerchParams", module = "lerch_stokes", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyParams {
    lambda: String,
    form: Form,
    s_re: String,
    s_im: String,
}

fn text(v: &Bound<'_, PyAny>) -> PyResult<String> {
    Ok(v.str()?.to_string())
}

impl PyParams {
    fn build(&self, prec: u32) -> PyResult<LerchParams> {
        match &self.form {
            Form::Cartesian { a_re, a_im } => {
                LerchParams::parse_cartesian(&self.lambda, a_re, a_im, &self.s_re, &self.s_im, prec)
            }
            Form::Polar { a_mod, theta_over_pi } => {
                LerchParams::parse_polar(&self.lambda, a_mod, theta_over_pi, &self.s_re, &self.s_im, prec)
            }
        }
        .map_err(py_err)
    }
}

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (lambda_, a_re, a_im = None, s = None, s_im = None))]
    fn new(
        lambda_: &Bound<'_, PyAny>,
        a_re: &Bound<'_, PyAny>,
        a_im: Option<&Bound<'_, PyAny>>,
        s: Option<&Bound<'_, PyAny>>,
        s_im: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let p = PyParams {
            lambda: text(lambda_)?,
            form: Form::Cartesian {
                a_re: text(a_re)?,
                a_im: a_im.map(text).transpose()?.unwrap_or_else(|| "0".into()),
            },
            s_re: s.map(text).transpose()?.unwrap_or_else(|| "4".into()),
            s_im: s_im.map(text).transpose()?.unwrap_or_else(|| "0".into()),
        };
        p.build(64)?;
        Ok(p)
    }

    /// a = |a|·e^{iπ·theta_over_pi}.
    #[staticmethod]
    #[pyo3(signature = (lambda_, a_mod, theta_over_pi, s = None, s_im = None))]
    fn polar(
        lambda_: &Bound<'_, PyAny>,
        a_mod: &Bound<'_, PyAny>,
        theta_over_pi: &Bound<'_, PyAny>,
        s: Option<&Bound<'_, PyAny>>,
        s_im: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let p = PyParams {
            lambda: text(lambda_)?,
            form: Form::Polar { a_mod: text(a_mod)?, theta_over_pi: text(theta_over_pi)? },
            s_re: s.map(text).transpose()?.unwrap_or_else(|| "4".into()),
            s_im: s_im.map(text).transpose()?.unwrap_or_else(|| "0".into()),
        };
        p.build(64)?;
        Ok(p)
    }

    fn __repr__(&self) -> String {
        match &self.form {
            Form::Cartesian { a_re, a_im } => {
                format!("LerchParams(lambda_={}, a={}+{}i, s={}+{}i)", self.lambda, a_re, a_im, self.s_re, self.s_im)
            }
            Form::Polar { a_mod, theta_over_pi } => format!(
                "LerchParams(lambda_={}, a={}·exp({}πi), s={}+{}i)",
                self.lambda, a_mod, theta_over_pi, self.s_re, self.s_im
            ),
        }
    }
}

/// Truncation indices N_k, N′_k, k = 0..=m_max.
#[pyclass(name = "Schedule", module = "lerch_stokes", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PySchedule {
    inner: TruncationSchedule,
}

#[pymethods]
impl PySchedule {
    #[new]
    fn new(n: Vec<usize>, n_prime: Vec<usize>) -> PyResult<Self> {
        Ok(PySchedule { inner: TruncationSchedule::new(n, n_prime).map_err(py_err)? })
    }

    #[staticmethod]
    fn linear(base: usize, m_max: usize) -> PyResult<Self> {
        Ok(PySchedule { inner: TruncationSchedule::linear(base, m_max).map_err(py_err)? })
    }

    /// Least-term indices for the given parameters.
    #[staticmethod]
    #[pyo3(signature = (params, m_max, digits = 50))]
    fn optimal(params: &PyParams, m_max: usize, digits: u32) -> PyResult<Self> {
        let ctx = context(digits)?;
        let p = params.build(ctx.bits())?;
        Ok(PySchedule { inner: TruncationSchedule::optimal(&p, m_max, &ctx).map_err(py_err)? })
    }

    #[getter]
    fn n(&self) -> Vec<usize> {
        self.inner.n().to_vec()
    }

    #[getter]
    fn n_prime(&self) -> Vec<usize> {
        self.inner.n_prime().to_vec()
    }

    #[getter]
    fn m_max(&self) -> usize {
        self.inner.m_max()
    }

    fn __repr__(&self) -> String {
        format!("Schedule(n={:?}, n_prime={:?})", self.inner.n(), self.inner.n_prime())
    }
}

/// Blocks of the exponentially improved expansion.
#[pyclass(name = "Breakdown", module = "lerch_stokes", frozen, skip_from_py_object)]
pub struct PyBreakdown {
    inner: ExpansionBreakdown,
}

#[pymethods]
impl PyBreakdown {
    #[getter]
    fn total(&self) -> PyValue {
        PyValue::new(&self.inner.total, self.inner.digits)
    }

    #[getter]
    fn leading(&self) -> PyValue {
        PyValue::new(&self.inner.leading, self.inner.digits)
    }

    #[getter]
    fn h(&self) -> Vec<PyValue> {
        self.inner.h.iter().map(|z| PyValue::new(z, self.inner.digits)).collect()
    }

    #[getter]
    fn r(&self) -> Vec<PyValue> {
        self.inner.r.iter().map(|z| PyValue::new(z, self.inner.digits)).collect()
    }

    #[getter]
    fn r_prime(&self) -> Vec<PyValue> {
        self.inner.r_prime.iter().map(|z| PyValue::new(z, self.inner.digits)).collect()
    }

    #[getter]
    fn tail_bound(&self) -> f64 {
        self.inner.tail_bound.to_f64()
    }

    #[getter]
    fn schedule(&self) -> PySchedule {
        PySchedule { inner: self.inner.schedule.clone() }
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }
}

/// Reference value of L(λ, a, s).
#[pyfunction]
#[pyo3(signature = (params, digits = 50))]
fn lerch(py: Python<'_>, params: &PyParams, digits: u32) -> PyResult<PyValue> {
    let ctx = context(digits)?;
    let p = params.build(ctx.bits())?;
    let l = py.detach(|| lerch_reference(&p, &ctx)).map_err(py_err)?;
    Ok(PyValue::new(&l, digits))
}

/// The K-term algebraic expansion: dict with pole_term, terms and sum.
#[pyfunction]
#[pyo3(signature = (params, terms, digits = 50))]
fn poincare<'py>(py: Python<'py>, params: &PyParams, terms: usize, digits: u32) -> PyResult<Bound<'py, PyDict>> {
    let ctx = context(digits)?;
    let p = params.build(ctx.bits())?;
    let e = poincare_expand(&p, terms, &ctx).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("pole_term", PyValue::new(&e.pole_term, digits))?;
    d.set_item("terms", e.terms.iter().map(|t| PyValue::new(t, digits)).collect::<Vec<_>>())?;
    d.set_item("sum", PyValue::new(&e.sum, digits))?;
    Ok(d)
}

/// The exponentially improved expansion; the schedule is chosen
/// automatically unless one is given.
#[pyfunction]
#[pyo3(signature = (params, schedule = None, digits = 50))]
fn improved(py: Python<'_>, params: &PyParams, schedule: Option<&PySchedule>, digits: u32) -> PyResult<PyBreakdown> {
    let ctx = context(digits)?;
    let p = params.build(ctx.bits())?;
    let sch = schedule.map(|s| s.inner.clone());
    let b = py
        .detach(|| match sch {
            Some(sch) => exp_improved_eval(&p, &sch, &ctx),
            None => exp_improved_auto(&p, &ctx),
        })
        .map_err(py_err)?;
    Ok(PyBreakdown { inner: b })
}

fn schedule_or_optimal(schedule: Option<&PySchedule>, p: &LerchParams, n: usize, ctx: &PrecisionContext) -> PyResult<TruncationSchedule> {
    match schedule {
        Some(s) => Ok(s.inner.clone()),
        None => TruncationSchedule::optimal(p, n, ctx).map_err(py_err),
    }
}

/// Stokes multiplier S_n at arg a of the parameters.
#[pyfunction]
#[pyo3(signature = (n, params, schedule = None, digits = 50))]
fn stokes_multiplier(
    py: Python<'_>,
    n: usize,
    params: &PyParams,
    schedule: Option<&PySchedule>,
    digits: u32,
) -> PyResult<PyValue> {
    let ctx = context(digits)?;
    let p = params.build(ctx.bits())?;
    let sch = schedule_or_optimal(schedule, &p, n, &ctx)?;
    let s = py.detach(|| stokes::stokes_multiplier(n, &p, &sch, &ctx)).map_err(py_err)?;
    Ok(PyValue::new(&s, digits))
}

/// ½ ± ½ erf[(θ ∓ π/2)√(π(n+ξ)|a|)].
#[pyfunction]
#[pyo3(signature = (n, theta, a_mod, lambda_))]
fn stokes_erf_approx(n: usize, theta: f64, a_mod: f64, lambda_: f64) -> f64 {
    stokes::stokes_erf_approx(n, theta, a_mod, lambda_)
}

/// S_n over θ/π values at the |a|, λ, s of `params`. Each row is a dict;
/// failed rows carry an "error" message instead of "S".
#[pyfunction]
#[pyo3(signature = (n, params, theta_over_pi, schedule = None, digits = 50))]
fn stokes_table<'py>(
    py: Python<'py>,
    n: usize,
    params: &PyParams,
    theta_over_pi: Vec<f64>,
    schedule: Option<&PySchedule>,
    digits: u32,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let ctx = context(digits)?;
    let p = params.build(ctx.bits())?;
    let sch = schedule_or_optimal(schedule, &p, n, &ctx)?;
    let rows = py.detach(|| stokes::stokes_table(n, &p, &theta_over_pi, &sch, &ctx));
    rows.into_iter()
        .map(|row| {
            let d = PyDict::new(py);
            d.set_item("theta_over_pi", row.theta_over_pi)?;
            d.set_item("n", n)?;
            match row.result {
                Ok(s) => {
                    d.set_item("S", PyValue::new(&s.s, digits))?;
                    d.set_item("approx", s.approx)?;
                    d.set_item("side", s.side.as_str())?;
                }
                Err(e) => d.set_item("error", e.to_string())?,
            }
            Ok(d)
        })
        .collect()
}

/// The θ/π grids of the two standard tables, both signs, ascending.
#[pyfunction]
fn table_grid(n: usize) -> Vec<f64> {
    stokes::symmetric_grid(if n == 0 { &stokes::TABLE_ONE_GRID } else { &stokes::TABLE_TWO_GRID })
}

#[pymodule]
fn lerch_stokes(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyValue>()?;
    m.add_class::<PyParams>()?;
    m.add_class::<PySchedule>()?;
    m.add_class::<PyBreakdown>()?;
    m.add_function(wrap_pyfunction!(lerch, m)?)?;
    m.add_function(wrap_pyfunction!(poincare, m)?)?;
    m.add_function(wrap_pyfunction!(improved, m)?)?;
    m.add_function(wrap_pyfunction!(stokes_multiplier, m)?)?;
    m.add_function(wrap_pyfunction!(stokes_erf_approx, m)?)?;
    m.add_function(wrap_pyfunction!(stokes_table, m)?)?;
    m.add_function(wrap_pyfunction!(table_grid, m)?)?;
    m.add("DomainError", py.get_type::<DomainError>())?;
    m.add("PoleError", py.get_type::<PoleError>())?;
    m.add("ConvergenceError", py.get_type::<ConvergenceError>())?;
    m.add("TailError", py.get_type::<TailError>())?;
    m.add("PrecisionError", py.get_type::<PrecisionError>())?;
    Ok(())
}

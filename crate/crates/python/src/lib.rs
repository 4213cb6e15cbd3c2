//! Python bindings: configurations, one-parameter subgroups and the
//! stability, Chow weight and Futaki computations. Reports come back as
//! plain dicts with exact rationals as `"p/q"` strings.

use chowstab as core;
use chowstab::ratlin::{format_rational, parse_rational};
use chowstab::{ErrorClass, ProjPoint, RatMatrix, Rational};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(pychowstab, ChowstabError, PyException);
create_exception!(pychowstab, InvalidInputError, ChowstabError);
create_exception!(pychowstab, UnsupportedError, ChowstabError);
create_exception!(pychowstab, PreconditionError, ChowstabError);

fn to_py_err(e: core::Error) -> PyErr {
    let msg = e.to_string();
    match e.class() {
        ErrorClass::InvalidInput => InvalidInputError::new_err(msg),
        ErrorClass::Unsupported => UnsupportedError::new_err(msg),
        ErrorClass::Precondition => PreconditionError::new_err(msg),
    }
}

/// Serializes through JSON into Python builtins.
fn to_python<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).expect("reports serialize");
    py.import("json")?.call_method1("loads", (text,))
}

/// Accepts ints, strings like `"-3/4"` and `fractions.Fraction`.
fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_string()).map_err(to_py_err)
}

fn rationals(objs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    objs.iter().map(rational).collect()
}

fn matrix(rows: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<RatMatrix> {
    let cols = rows.first().map_or(0, Vec::len);
    let rows = rows.iter().map(|r| rationals(r)).collect::<PyResult<Vec<_>>>()?;
    RatMatrix::from_rows(cols, rows).map_err(to_py_err)
}

#[pyclass(name = "OnePS", module = "pychowstab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOnePS {
    inner: core::OnePS,
}

#[pymethods]
impl PyOnePS {
    /// `t -> g diag(t^q) g^-1`; `conjugation` is `g` as rows.
    #[new]
    #[pyo3(signature = (weights, conjugation=None))]
    fn new(weights: Vec<i64>, conjugation: Option<Vec<Vec<Bound<'_, PyAny>>>>) -> PyResult<Self> {
        let inner = match conjugation {
            None => core::OnePS::diagonal(weights),
            Some(rows) => core::OnePS::conjugated(weights, matrix(rows)?).map_err(to_py_err)?,
        };
        Ok(PyOnePS { inner })
    }

    #[getter]
    fn weights(&self) -> Vec<i64> {
        self.inner.weights().to_vec()
    }

    fn normalized(&self) -> Self {
        PyOnePS {
            inner: self.inner.normalized(),
        }
    }

    fn inverse(&self) -> Self {
        PyOnePS {
            inner: self.inner.inverse(),
        }
    }

    fn is_trivial(&self) -> bool {
        self.inner.is_trivial()
    }

    /// Whether the generator commutes with every matrix given.
    fn commutes_with(&self, generators: Vec<Vec<Vec<Bound<'_, PyAny>>>>) -> PyResult<bool> {
        let gens = generators.into_iter().map(matrix).collect::<PyResult<Vec<_>>>()?;
        core::commutation_check(&self.inner, &gens).map_err(to_py_err)
    }

    fn __repr__(&self) -> String {
        format!("OnePS(weights={:?})", self.inner.weights())
    }
}

#[pyclass(name = "Configuration", module = "pychowstab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyConfiguration {
    inner: core::Configuration,
}

#[pymethods]
impl PyConfiguration {
    /// Points of `P^n` given as `(coordinates, multiplicity)` pairs.
    #[staticmethod]
    fn from_points(ambient_dim: usize, points: Vec<(Vec<Bound<'_, PyAny>>, u64)>) -> PyResult<Self> {
        let pts = points
            .iter()
            .map(|(coords, m)| {
                let p = ProjPoint::from_rationals(&rationals(coords)?).map_err(to_py_err)?;
                Ok((p, *m))
            })
            .collect::<PyResult<Vec<_>>>()?;
        let inner = core::Configuration::from_points(ambient_dim, pts).map_err(to_py_err)?;
        Ok(PyConfiguration { inner })
    }

    /// Linear subspaces given as `(basis rows, multiplicity)` pairs.
    #[staticmethod]
    fn from_subspaces(ambient_dim: usize, subspaces: Vec<(Vec<Vec<Bound<'_, PyAny>>>, u64)>) -> PyResult<Self> {
        let subs = subspaces
            .into_iter()
            .map(|(rows, m)| {
                let rows = rows.iter().map(|r| rationals(r)).collect::<PyResult<Vec<_>>>()?;
                let s = core::LinSubspace::from_basis(ambient_dim + 1, rows).map_err(to_py_err)?;
                Ok((s, m))
            })
            .collect::<PyResult<Vec<_>>>()?;
        let inner = core::Configuration::from_subspaces(ambient_dim, subs).map_err(to_py_err)?;
        Ok(PyConfiguration { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = core::parse_configuration(text).map_err(to_py_err)?;
        Ok(PyConfiguration { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn ambient_dim(&self) -> usize {
        self.inner.ambient_dim()
    }

    #[getter]
    fn total_multiplicity(&self) -> u64 {
        self.inner.total_multiplicity()
    }

    fn __len__(&self) -> usize {
        self.inner.components().len()
    }

    fn absolute_verdict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &core::absolute_verdict(&self.inner).map_err(to_py_err)?)
    }

    fn relative_verdict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &core::relative_verdict(&self.inner).map_err(to_py_err)?)
    }

    fn decompose<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &core::decompose_span(&self.inner).map_err(to_py_err)?)
    }

    /// Mumford weight as a `"p/q"` string.
    fn mumford_weight(&self, one_ps: &PyOnePS) -> PyResult<String> {
        let w = core::mumford_weight(&self.inner, &one_ps.inner).map_err(to_py_err)?;
        Ok(format_rational(&w.value))
    }

    fn chow_weight<'py>(&self, py: Python<'py>, one_ps: &PyOnePS) -> PyResult<Bound<'py, PyAny>> {
        to_python(
            py,
            &core::config_chow_weight(&self.inner, &one_ps.inner).map_err(to_py_err)?,
        )
    }

    #[pyo3(signature = (one_ps, base_futaki=None))]
    fn futaki<'py>(
        &self,
        py: Python<'py>,
        one_ps: &PyOnePS,
        base_futaki: Option<Bound<'py, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let base = match base_futaki {
            Some(b) => rational(&b)?,
            None => Rational::from_integer(0.into()),
        };
        to_python(
            py,
            &core::futaki_correction(&self.inner, &one_ps.inner, &base).map_err(to_py_err)?,
        )
    }

    /// Bounded search for a destabilizing subgroup; `None` when none is found.
    #[pyo3(signature = (bound=3, samples=20, seed=0))]
    fn oracle_search<'py>(
        &self,
        py: Python<'py>,
        bound: u32,
        samples: usize,
        seed: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let found = core::oracle_search(&self.inner, bound, samples, seed).map_err(to_py_err)?;
        to_python(py, &found.map(|(lambda, w)| (lambda, format_rational(&w.value))))
    }

    fn __repr__(&self) -> String {
        format!(
            "Configuration(ambient_dim={}, components={})",
            self.inner.ambient_dim(),
            self.inner.components().len()
        )
    }
}

/// Parses a JSON document into a configuration and its optional subgroup.
#[pyfunction]
fn parse_document(text: &str) -> PyResult<(PyConfiguration, Option<PyOnePS>)> {
    let doc = core::parse_document(text).map_err(to_py_err)?;
    Ok((
        PyConfiguration {
            inner: doc.configuration,
        },
        doc.one_ps.map(|inner| PyOnePS { inner }),
    ))
}

#[pymodule]
fn pychowstab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyConfiguration>()?;
    m.add_class::<PyOnePS>()?;
    m.add_function(wrap_pyfunction!(parse_document, m)?)?;
    m.add("ChowstabError", py.get_type::<ChowstabError>())?;
    m.add("InvalidInputError", py.get_type::<InvalidInputError>())?;
    m.add("UnsupportedError", py.get_type::<UnsupportedError>())?;
    m.add("PreconditionError", py.get_type::<PreconditionError>())?;
    Ok(())
}

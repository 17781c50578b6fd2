//! Python bindings: rings, modules, preradicals, firstness deciders,
//! classification, theorem replay and job documents.

use preradlab::classifier::{classify_ring, enumerate_lep, verify_theorem};
use preradlab::firstness::{self, firstness_report};
use preradlab::job;
use preradlab::modules::{cogenerates, is_injective, simple_modules, structural_predicates};
use preradlab::preradical::{compare, parse_preradical, property_flags, PreradicalContext};
use preradlab::{Caps, Error, FiniteModule, FiniteRing, Preradical, Sidedness, Universe, UniverseParams};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;
use std::collections::HashMap;
use std::sync::Arc;

create_exception!(preradlab_py, PreradlabError, PyException, "Engine error.");
create_exception!(preradlab_py, ParseError, PreradlabError, "Syntax error or unresolved reference.");
create_exception!(preradlab_py, CapError, PreradlabError, "Size cap exceeded.");
create_exception!(preradlab_py, InconsistencyError, PreradlabError, "Two characterizations disagreed.");

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e.exit_code() {
        1 => ParseError::new_err(msg),
        2 => CapError::new_err(msg),
        4 => InconsistencyError::new_err(msg),
        _ => PreradlabError::new_err(msg),
    }
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py_any(py)?,
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_py_any(py)?,
            (None, Some(i)) => i.into_py_any(py)?,
            _ => n.as_f64().unwrap_or(f64::NAN).into_py_any(py)?,
        },
        Value::String(s) => s.into_py_any(py)?,
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn serialize<T: serde::Serialize>(py: Python<'_>, v: &T) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::to_value(v).map_err(|e| PreradlabError::new_err(e.to_string()))?)
}

/// A finite ring with identity.
#[pyclass(name = "Ring", module = "preradlab_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyRing(Arc<FiniteRing>);

#[pymethods]
impl PyRing {
    /// Builds a ring from a constructor such as `matrix(cyclic(2), 2)`.
    #[new]
    #[pyo3(signature = (spec, cap_ring = 16, cap_module = 64))]
    fn new(spec: &str, cap_ring: usize, cap_module: usize) -> PyResult<Self> {
        let caps = Caps {
            ring: cap_ring,
            module: cap_module,
        };
        Ok(PyRing(job::parse_ring_spec(spec).map_err(err)?.build(&caps).map_err(err)?))
    }

    #[staticmethod]
    #[pyo3(signature = (add, mul, cap_ring = 16, cap_module = 64))]
    fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, cap_ring: usize, cap_module: usize) -> PyResult<Self> {
        let caps = Caps {
            ring: cap_ring,
            module: cap_module,
        };
        Ok(PyRing(FiniteRing::from_tables(&add, &mul, &caps).map_err(err)?))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn description(&self) -> String {
        self.0.description().to_string()
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.0.add(a, b)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.0.mul(a, b)
    }

    fn is_commutative(&self) -> bool {
        self.0.is_commutative()
    }

    /// Ideals in canonical order, as element lists.
    #[pyo3(signature = (two_sided = false))]
    fn ideals(&self, two_sided: bool) -> Vec<Vec<usize>> {
        let side = if two_sided { Sidedness::TwoSided } else { Sidedness::Left };
        self.0.ideals(side).iter().map(|i| i.elements()).collect()
    }

    fn regular(&self) -> PyResult<PyModule_> {
        Ok(PyModule_(FiniteModule::regular(&self.0).map_err(err)?))
    }

    fn simple_modules(&self) -> PyResult<Vec<PyModule_>> {
        Ok(simple_modules(&self.0).map_err(err)?.into_iter().map(PyModule_).collect())
    }

    #[pyo3(signature = (depth = 2))]
    fn classify(&self, py: Python<'_>, depth: usize) -> PyResult<Py<PyAny>> {
        let u = Universe::generate(&self.0, UniverseParams { depth }).map_err(err)?;
        serialize(py, &classify_ring(&self.0, &u).map_err(err)?)
    }

    #[pyo3(signature = (theorem, depth = 2))]
    fn verify(&self, py: Python<'_>, theorem: &str, depth: usize) -> PyResult<Py<PyAny>> {
        let u = Universe::generate(&self.0, UniverseParams { depth }).map_err(err)?;
        serialize(py, &verify_theorem(theorem, &self.0, &u).map_err(err)?)
    }

    /// The left exact preradicals, one per linear filter.
    fn lep(&self) -> PyResult<Vec<PyPreradical>> {
        Ok(enumerate_lep(&self.0).map_err(err)?.into_iter().map(PyPreradical).collect())
    }

    fn __repr__(&self) -> String {
        format!("Ring({}, order {})", self.0.description(), self.0.order())
    }
}

/// A finite left module.
#[pyclass(name = "Module", module = "preradlab_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyModule_(Arc<FiniteModule>);

#[pymethods]
impl PyModule_ {
    #[staticmethod]
    fn from_tables(ring: &PyRing, add: Vec<Vec<usize>>, act: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyModule_(FiniteModule::from_tables(&ring.0, &add, &act).map_err(err)?))
    }

    #[staticmethod]
    fn direct_sum(parts: Vec<PyModule_>) -> PyResult<Self> {
        let parts: Vec<_> = parts.into_iter().map(|p| p.0).collect();
        Ok(PyModule_(FiniteModule::direct_sum(&parts).map_err(err)?.module))
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    #[getter]
    fn description(&self) -> String {
        self.0.description().to_string()
    }

    #[getter]
    fn ring(&self) -> PyRing {
        PyRing(Arc::clone(self.0.ring()))
    }

    fn add(&self, x: usize, y: usize) -> usize {
        self.0.add(x, y)
    }

    fn act(&self, r: usize, x: usize) -> usize {
        self.0.act(r, x)
    }

    /// Submodules in canonical order, as element lists.
    fn submodules(&self) -> Vec<Vec<usize>> {
        self.0.submodules().iter().map(|s| s.elements()).collect()
    }

    fn quotient(&self, index: usize) -> PyResult<Self> {
        let s = self.sub_at(index)?;
        Ok(PyModule_(self.0.quotient(&s).map_err(err)?.module))
    }

    fn submodule(&self, index: usize) -> PyResult<Self> {
        let s = self.sub_at(index)?;
        Ok(PyModule_(self.0.submodule_module(&s).map_err(err)?.module))
    }

    fn structure(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let s = structural_predicates(&self.0).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("is_simple", s.is_simple)?;
        d.set_item("is_semisimple", s.is_semisimple)?;
        d.set_item("is_homogeneous_semisimple", s.is_homogeneous_semisimple)?;
        d.set_item("socle", s.socle.elements())?;
        d.set_item("jacobson_radical", s.jacobson_radical.elements())?;
        Ok(d.into_any().unbind())
    }

    fn is_bjkn_prime(&self) -> PyResult<bool> {
        firstness::is_bjkn_prime(&self.0).map_err(err)
    }

    fn is_prime(&self) -> PyResult<bool> {
        firstness::is_prime_module(&self.0).map_err(err)
    }

    fn is_rpid_first(&self) -> PyResult<bool> {
        firstness::is_rpid_first(&self.0).map_err(err)
    }

    fn is_diuniform(&self) -> PyResult<bool> {
        firstness::is_diuniform(&self.0).map_err(err)
    }

    fn is_retractable(&self) -> PyResult<bool> {
        firstness::is_retractable(&self.0).map_err(err)
    }

    fn is_endomorphism_ring_prime(&self) -> PyResult<bool> {
        firstness::is_endomorphism_ring_prime(&self.0).map_err(err)
    }

    fn is_injective(&self) -> PyResult<bool> {
        is_injective(&self.0).map_err(err)
    }

    /// Whether `self` cogenerates `other`.
    fn cogenerates(&self, other: &PyModule_) -> PyResult<bool> {
        cogenerates(&self.0, &other.0).map_err(err)
    }

    fn firstness_report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        serialize(py, &firstness_report(&self.0).map_err(err)?)
    }

    #[pyo3(name = "is_A_first")]
    fn is_a_first(&self, family: Vec<PyPreradical>) -> PyResult<bool> {
        let fam: Vec<_> = family.into_iter().map(|p| p.0).collect();
        firstness::is_A_first(&self.0, &fam).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Module({}, order {})", self.0.description(), self.0.order())
    }
}

impl PyModule_ {
    fn sub_at(&self, index: usize) -> PyResult<preradlab::Submodule> {
        self.0
            .submodules()
            .get(index)
            .cloned()
            .ok_or_else(|| ParseError::new_err(format!("no submodule with index {index}")))
    }
}

/// A preradical expression.
#[pyclass(name = "Preradical", module = "preradlab_py", frozen, from_py_object)]
#[derive(Clone)]
struct PyPreradical(Preradical);

#[pymethods]
impl PyPreradical {
    /// Parses an expression; `modules` names the modules it may refer to.
    #[staticmethod]
    #[pyo3(signature = (ring, text, modules = None))]
    fn parse(ring: &PyRing, text: &str, modules: Option<HashMap<String, PyModule_>>) -> PyResult<Self> {
        let mut named: Vec<(String, Arc<FiniteModule>)> =
            modules.unwrap_or_default().into_iter().map(|(k, m)| (k, m.0)).collect();
        named.sort_by(|a, b| a.0.cmp(&b.0));
        let ctx = PreradicalContext::new(&ring.0, &named);
        Ok(PyPreradical(parse_preradical(text, &ctx).map_err(err)?))
    }

    /// σ(M) as an element list.
    fn evaluate(&self, module: &PyModule_) -> PyResult<Vec<usize>> {
        Ok(self.0.evaluate(&module.0).map_err(err)?.elements())
    }

    /// Property flags on the generated universe of `ring`.
    #[pyo3(signature = (ring, depth = 2))]
    fn flags(&self, py: Python<'_>, ring: &PyRing, depth: usize) -> PyResult<Py<PyAny>> {
        let u = universe(ring, depth)?;
        serialize(py, &property_flags(&self.0, &u).map_err(err)?)
    }

    /// Order against `other` on the generated universe of `ring`.
    #[pyo3(signature = (other, ring, depth = 2))]
    fn compare(&self, py: Python<'_>, other: &PyPreradical, ring: &PyRing, depth: usize) -> PyResult<Py<PyAny>> {
        let u = universe(ring, depth)?;
        serialize(py, &compare(&self.0, &other.0, &u).map_err(err)?)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Preradical({})", self.0)
    }
}

fn universe(ring: &PyRing, depth: usize) -> PyResult<Universe> {
    Universe::generate(&ring.0, UniverseParams { depth }).map_err(err)
}

/// Canonical form of a job document.
#[pyfunction]
fn parse_job(document: &str) -> PyResult<String> {
    Ok(job::parse_job(document).map_err(err)?.to_string())
}

/// Runs a job document and returns the structured report.
#[pyfunction]
fn run_job(py: Python<'_>, document: &str) -> PyResult<Py<PyAny>> {
    let spec = job::parse_job(document).map_err(err)?;
    serialize(py, &job::run_job(&spec).map_err(err)?)
}

#[pymodule]
fn preradlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add_class::<PyRing>()?;
    m.add_class::<PyModule_>()?;
    m.add_class::<PyPreradical>()?;
    m.add_function(wrap_pyfunction!(parse_job, m)?)?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add("PreradlabError", py.get_type::<PreradlabError>())?;
    m.add("ParseError", py.get_type::<ParseError>())?;
    m.add("CapError", py.get_type::<CapError>())?;
    m.add("InconsistencyError", py.get_type::<InconsistencyError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}

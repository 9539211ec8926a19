//! Python bindings: the `Algebra` class and the census.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyList;

use leibniz_ct::census::{ct_census, DEFAULT_TABLE_BUDGET};
use leibniz_ct::invariants::{centralizer, nilradical_report};
use leibniz_ct::io::{parse_algebra, quotient_by_spec, serialize_any};
use leibniz_ct::report::{analyze_any, ct_verdict, verdict_json, verify_any, FamilyClaim, FamilyRequest, Suite};
use leibniz_ct::{AnyAlgebra, Error, Field, FieldSpec, LeibnizAlgebra};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn field_spec(p: Option<u64>) -> PyResult<FieldSpec> {
    match p {
        None => Ok(FieldSpec::Rationals),
        Some(p) => FieldSpec::prime(p).map_err(err),
    }
}

/// A Leibniz algebra over `Q` or `GF(p)`.
#[pyclass(module = "pyleibniz", frozen)]
struct Algebra {
    inner: AnyAlgebra,
    claim: Option<FamilyClaim>,
}

impl Algebra {
    fn plain(inner: AnyAlgebra) -> Self {
        Algebra { inner, claim: None }
    }

    fn family(req: FamilyRequest) -> PyResult<Self> {
        let (inner, claim) = req.build().map_err(err)?;
        Ok(Algebra {
            inner,
            claim: Some(claim),
        })
    }
}

fn product<F: Field>(l: &LeibnizAlgebra<F>, x: &str, y: &str) -> Result<String, Error> {
    let (x, y) = (l.parse_element(x)?, l.parse_element(y)?);
    Ok(l.format_element(&l.product(&x, &y)))
}

fn centraliser_basis<F: Field>(l: &LeibnizAlgebra<F>, x: &str) -> Result<Vec<String>, Error> {
    let x = l.parse_element(x)?;
    Ok(centralizer(l, &x)?.basis().iter().map(|v| l.format_element(v)).collect())
}

fn nilradical_basis<F: Field>(l: &LeibnizAlgebra<F>) -> Vec<String> {
    nilradical_report(l).subspace.basis().iter().map(|v| l.format_element(v)).collect()
}

fn ct_json<F: Field>(l: &LeibnizAlgebra<F>, seed: u64) -> serde_json::Value {
    match ct_verdict(l, seed) {
        Some(v) => verdict_json(l, &v),
        None => serde_json::json!({ "status": "skipped" }),
    }
}

macro_rules! dispatch {
    ($any:expr, $l:ident => $body:expr) => {
        match $any {
            AnyAlgebra::Rational($l) => $body,
            AnyAlgebra::Prime($l) => $body,
        }
    };
}

#[pymethods]
impl Algebra {
    /// Parse the JSON algebra file format.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        parse_algebra(text).map(Algebra::plain).map_err(err)
    }

    fn to_json(&self) -> String {
        serialize_any(&self.inner)
    }

    /// Cyclic algebra with `a^n a = sum alpha_i a^i`; `p = None` means `Q`.
    #[staticmethod]
    #[pyo3(signature = (alphas, p=None))]
    fn cyclic(alphas: Vec<String>, p: Option<u64>) -> PyResult<Self> {
        Algebra::family(FamilyRequest::Cyclic {
            field: field_spec(p)?,
            alphas,
        })
    }

    #[staticmethod]
    fn jac(p: u64) -> PyResult<Self> {
        Algebra::family(FamilyRequest::Jac { p })
    }

    #[staticmethod]
    #[pyo3(signature = (p=None))]
    fn sl2(p: Option<u64>) -> PyResult<Self> {
        Algebra::family(FamilyRequest::Sl2 { field: field_spec(p)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field_spec().to_string()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn is_leibniz(&self) -> bool {
        dispatch!(&self.inner, l => l.is_leibniz())
    }

    fn is_lie(&self) -> bool {
        dispatch!(&self.inner, l => l.is_lie())
    }

    /// Product of two elements written in basis names, e.g. `"a + 2*a2"`.
    fn product(&self, x: &str, y: &str) -> PyResult<String> {
        dispatch!(&self.inner, l => product(l, x, y)).map_err(err)
    }

    fn centralizer(&self, x: &str) -> PyResult<Vec<String>> {
        dispatch!(&self.inner, l => centraliser_basis(l, x)).map_err(err)
    }

    fn nilradical(&self) -> Vec<String> {
        dispatch!(&self.inner, l => nilradical_basis(l))
    }

    /// CT verdict as a dict with `status` and, when not CT, a witness.
    #[pyo3(signature = (seed=0))]
    fn ct<'py>(&self, py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &dispatch!(&self.inner, l => ct_json(l, seed)))
    }

    #[pyo3(signature = (seed=0))]
    fn analyze<'py>(&self, py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &analyze_any(&self.inner, seed))
    }

    /// Run verification suites (`"all"` or a comma-separated list).
    #[pyo3(signature = (suites="all", seed=0))]
    fn verify<'py>(&self, py: Python<'py>, suites: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let suites = Suite::parse_list(suites).map_err(err)?;
        to_py(py, &verify_any(&self.inner, &suites, self.claim.as_ref(), seed))
    }

    /// Quotient by the span of comma-separated elements, which must be an ideal.
    fn quotient(&self, ideal: &str) -> PyResult<Algebra> {
        quotient_by_spec(&self.inner, ideal).map(Algebra::plain).map_err(err)
    }

    fn __eq__(&self, other: &Algebra) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Algebra(dim={}, field={}, basis={:?})", self.dim(), self.field(), self.basis())
    }
}

/// CT census of every table over `GF(p)` in dimension `dim`.
#[pyfunction]
#[pyo3(signature = (p, dim, jobs=1))]
fn census<'py>(py: Python<'py>, p: u32, dim: usize, jobs: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = py
        .detach(|| ct_census(p, dim, DEFAULT_TABLE_BUDGET, jobs.max(1)))
        .map_err(err)?;
    to_py(py, &serde_json::to_value(r).map_err(|e| PyValueError::new_err(e.to_string()))?)
}

/// Names of the verification suites.
#[pyfunction]
fn suites<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
    PyList::new(py, Suite::ALL.iter().map(|s| s.name()))
}

#[pymodule]
fn pyleibniz(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    Ok(())
}

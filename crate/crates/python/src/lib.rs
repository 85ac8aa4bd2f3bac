//! Python bindings: arrangements, `mdr`, invariants, verdicts, the oracle and reports.

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use serde::Serialize;

use unexpected_core::arrangement::{
    self as arr, add_generic_line, add_generic_line_through, catalog_build, catalog_names, delete_line, dualize_inv,
    CatalogParams,
};
use unexpected_core::io::{self, build_report, emit_report, parse_document, Format, InputDocument, ReportOptions};
use unexpected_core::syzygy::{mdr_arrangement, numeric_invariants_from, MdrOptions};
use unexpected_core::unexpected::{self as unx, OracleBudget};
use unexpected_core::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Parse { .. } | Error::InvalidArgument(_) | Error::UnknownCatalog(_) | Error::DegreeMismatch(..) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn json<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(v).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn triples<T: std::fmt::Display>(rows: impl IntoIterator<Item = [T; 3]>) -> Vec<[String; 3]> {
    rows.into_iter().map(|t| t.map(|s| s.to_string())).collect()
}

/// Canonical form of a scalar expression such as `1 + z(4)^3`.
#[pyfunction]
fn parse_scalar(expr: &str) -> PyResult<String> {
    io::parse_scalar(expr).map(|s| s.to_string()).map_err(to_py)
}

/// Names, parameters and descriptions of the catalog entries.
#[pyfunction]
fn catalog<'py>(py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
    let rows: Vec<_> = catalog_names()
        .into_iter()
        .map(|c| serde_json::json!({ "name": c.name, "params": c.params, "description": c.description }))
        .collect();
    json(py, &rows)
}

/// A line arrangement over a cyclotomic field.
#[pyclass(name = "Arrangement", frozen)]
struct PyArrangement {
    inner: arr::Arrangement,
    kind: &'static str,
}

impl PyArrangement {
    fn wrap(inner: arr::Arrangement, kind: &'static str) -> Self {
        PyArrangement { inner, kind }
    }
}

#[pymethods]
impl PyArrangement {
    /// Lines given as coefficient triples of scalar expressions.
    #[new]
    #[pyo3(signature = (lines, label = "python"))]
    fn new(lines: Vec<[String; 3]>, label: &str) -> PyResult<Self> {
        let mut text = format!("lines:\nlabel: {label}\n");
        for [a, b, c] in &lines {
            text.push_str(&format!("[{a}, {b}, {c}]\n"));
        }
        Self::parse(&text)
    }

    /// An arrangement from the text format (`lines:`, `points:` or `catalog:`).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        let doc = parse_document(text).map_err(to_py)?;
        Ok(Self::wrap(doc.arrangement().map_err(to_py)?, doc.kind.as_str()))
    }

    /// The dual arrangement of a point set.
    #[staticmethod]
    #[pyo3(signature = (points, label = "python"))]
    fn from_points(points: Vec<[String; 3]>, label: &str) -> PyResult<Self> {
        let mut text = format!("points:\nlabel: {label}\n");
        for [a, b, c] in &points {
            text.push_str(&format!("[{a}, {b}, {c}]\n"));
        }
        Self::parse(&text)
    }

    /// A catalog entry, e.g. `Arrangement.catalog("fermat", m=5)`.
    #[staticmethod]
    #[pyo3(signature = (name, **params))]
    fn catalog(name: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Self> {
        let mut p = CatalogParams::new();
        if let Some(d) = params {
            for (k, v) in d.iter() {
                p.insert(k.extract::<String>()?, v.str()?.to_string());
            }
        }
        Ok(Self::wrap(catalog_build(name, &p).map_err(to_py)?, "catalog"))
    }

    #[getter]
    fn label(&self) -> &str {
        self.inner.label()
    }

    #[getter]
    fn lines(&self) -> Vec<[String; 3]> {
        triples(self.inner.lines().iter().map(|l| l.coeffs().clone()))
    }

    /// Points of the dual point set.
    fn dual_points(&self) -> Vec<[String; 3]> {
        triples(dualize_inv(&self.inner).points().iter().map(|p| p.coords().clone()))
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Arrangement({}, d={})", self.inner.label(), self.inner.len())
    }

    fn __eq__(&self, other: &PyArrangement) -> bool {
        self.inner == other.inner
    }

    fn to_text(&self) -> String {
        InputDocument::from_arrangement(&self.inner).to_text()
    }

    fn defining_polynomial(&self) -> String {
        self.inner.defining_polynomial().to_string()
    }

    fn max_multiplicity(&self) -> PyResult<usize> {
        self.inner.max_multiplicity().map_err(to_py)
    }

    /// `(k, n_k)` pairs over the intersection points.
    fn multiplicities(&self) -> PyResult<Vec<(usize, usize)>> {
        let lat = self.inner.lattice().map_err(to_py)?;
        Ok(lat.multiplicity_profile().into_iter().collect())
    }

    fn is_supersolvable(&self) -> PyResult<bool> {
        arr::is_supersolvable(&self.inner).map_err(to_py)
    }

    fn modular_points(&self) -> PyResult<Vec<[String; 3]>> {
        let pts = arr::modular_points(&self.inner).map_err(to_py)?;
        Ok(triples(pts.iter().map(|p| p.coords().clone())))
    }

    /// `(r, (a, b, c))`: the minimal degree of a Jacobian relation and a witness.
    fn mdr(&self) -> PyResult<(u32, (String, String, String))> {
        let (r, w) = mdr_arrangement(&self.inner, MdrOptions::default()).map_err(to_py)?;
        let [a, b, c] = w.components().clone().map(|p| p.to_string());
        Ok((r, (a, b, c)))
    }

    /// Tjurina number, freeness, exponents and splitting type.
    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let (r, _) = mdr_arrangement(&self.inner, MdrOptions::default()).map_err(to_py)?;
        let lat = self.inner.lattice().map_err(to_py)?;
        json(py, &numeric_invariants_from(lat, r))
    }

    /// Existence, degree range and irreducibility of unexpected curves for the dual points.
    fn unexpected<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json(py, &unx::theorem_report_arrangement(&self.inner).map_err(to_py)?)
    }

    /// Interpolation check in degree `j`.
    #[pyo3(signature = (j, seed = 0))]
    fn oracle<'py>(&self, py: Python<'py>, j: u32, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let z = dualize_inv(&self.inner);
        json(py, &unx::is_unexpected_direct(&z, j, seed).map_err(to_py)?)
    }

    /// Oracle against the mdr criterion for every degree `2..=d-2` within budget.
    #[pyo3(signature = (seed = 0))]
    fn cross_validate<'py>(&self, py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let z = dualize_inv(&self.inner);
        json(
            py,
            &unx::cross_validate(&z, seed, &OracleBudget::default()).map_err(to_py)?,
        )
    }

    /// `(base point, equation)` of the degree `j` curve singular at a random point.
    #[pyo3(signature = (j, seed = 0))]
    fn curve(&self, j: u32, seed: u64) -> PyResult<([String; 3], String)> {
        let z = dualize_inv(&self.inner);
        let q = unx::generic_points(&z, 1, seed).map_err(to_py)?.remove(0);
        let c = unx::extract_curve(&z, j, &q).map_err(to_py)?;
        Ok((q.coords().clone().map(|s| s.to_string()), c.to_string()))
    }

    fn delete_line(&self, i: usize) -> PyResult<Self> {
        if i >= self.inner.len() {
            return Err(PyIndexError::new_err(format!("line {i} out of range")));
        }
        Ok(Self::wrap(delete_line(&self.inner, i).map_err(to_py)?, self.kind))
    }

    #[pyo3(signature = (seed = 0))]
    fn add_generic_line(&self, seed: u64) -> PyResult<Self> {
        Ok(Self::wrap(
            add_generic_line(&self.inner, seed).map_err(to_py)?,
            self.kind,
        ))
    }

    /// Adds a generic line through a point of maximal multiplicity.
    #[pyo3(signature = (seed = 0))]
    fn add_line_through_max_point(&self, seed: u64) -> PyResult<Self> {
        let lat = self.inner.lattice().map_err(to_py)?;
        let p = lat
            .max_point()
            .ok_or_else(|| PyValueError::new_err("arrangement has no intersection point"))?
            .point
            .clone();
        Ok(Self::wrap(
            add_generic_line_through(&self.inner, &p, seed).map_err(to_py)?,
            self.kind,
        ))
    }

    /// The full report as JSON text, identical to `unexpected analyze`.
    #[pyo3(signature = (oracle = false, seed = 0))]
    fn report(&self, oracle: bool, seed: u64) -> PyResult<String> {
        let opts = ReportOptions {
            oracle,
            seed,
            ..ReportOptions::default()
        };
        let rep = build_report(&self.inner, self.kind, &opts).map_err(to_py)?;
        Ok(emit_report(&rep, Format::Json))
    }
}

#[pymodule]
pub fn unexpected_curves(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArrangement>()?;
    m.add_function(wrap_pyfunction!(parse_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add("SCHEMA_VERSION", io::SCHEMA_VERSION)?;
    Ok(())
}

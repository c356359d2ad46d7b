//! Python bindings. Structured results (certificates, models, reports) are
//! returned as plain dicts and lists; exact values as `fractions.Fraction`.

use std::collections::BTreeMap;

use bpl_core::coloring::{acyclic_chromatic_exact_capped, scol_exact_capped, scol_greedy, ACYCLIC_CAP, SCOL_CAP};
use bpl_core::constructions::{contract_subdivision, lift_tree_decomposition, minor_drawing, planarize, sparsify};
use bpl_core::drawing::{compute_crossings, validate_drawing};
use bpl_core::expansion::{nabla_capped, topo_nabla_capped, EXPANSION_CAP};
use bpl_core::harness::generate::{generate as generate_instance, Family};
use bpl_core::harness::report::verify_bounds as verify_bounds_core;
use bpl_core::harness::{closed_form_bounds, d_k as d_k_core, run_pipeline, BoundParams, PipelineSpec, VerifyConfig};
use bpl_core::io::{from_json, rational_string, to_json};
use bpl_core::numbers::{
    check_cover, check_gap, check_gap_cover, cover_number, gap_cover_number, gap_number, matching_planar_number,
    CoverCertificate, GapCertificate, GapCoverCertificate,
};
use bpl_core::treewidth::{treewidth_exact_capped, TREEWIDTH_CAP};
use bpl_core::{degeneracy, Error, Rational};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyString;
use serde::de::DeserializeOwned;
use serde::Serialize;

create_exception!(bpl, BplError, PyException);
create_exception!(bpl, InvalidInputError, BplError);
create_exception!(bpl, CertificateRejectedError, BplError);
create_exception!(bpl, TooLargeError, BplError);

fn err(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::TooLarge { .. } => TooLargeError::new_err(msg),
        Error::CertificateRejected(_) | Error::Invariant(_) => CertificateRejectedError::new_err(msg),
        Error::Graph(_)
        | Error::InvalidDrawing(_)
        | Error::InvalidInput(_)
        | Error::MalformedCertificate(_)
        | Error::Json(_) => InvalidInputError::new_err(msg),
    }
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = to_json(value).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// Accepts a JSON string or any JSON-serializable Python object.
fn from_py<T: DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = match obj.cast::<PyString>() {
        Ok(s) => s.to_string(),
        Err(_) => obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?,
    };
    from_json(&text).map_err(err)
}

fn fraction(py: Python<'_>, text: String) -> PyResult<Py<PyAny>> {
    Ok(py.import("fractions")?.getattr("Fraction")?.call1((text,))?.unbind())
}

fn ratio(py: Python<'_>, q: Rational) -> PyResult<Py<PyAny>> {
    fraction(py, q.to_string())
}

#[pyclass(name = "Graph", module = "bpl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph(bpl_core::Graph);

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: Vec<u32>, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        Ok(PyGraph(
            bpl_core::Graph::new(vertices, edges).map_err(|e| err(e.into()))?,
        ))
    }

    #[staticmethod]
    fn complete(n: u32) -> Self {
        PyGraph(bpl_core::Graph::complete(n))
    }

    #[staticmethod]
    fn from_json(data: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyGraph(from_py(data)?))
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0).map_err(err)
    }

    #[getter]
    fn vertices(&self) -> Vec<u32> {
        self.0.vertices().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(u32, u32)> {
        self.0.edges().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn density(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        ratio(py, self.0.density())
    }

    fn max_subgraph_density(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        ratio(py, bpl_core::densest::max_subgraph_density(&self.0).density)
    }

    /// `(degeneracy, ordering)`.
    fn degeneracy(&self) -> (usize, Vec<u32>) {
        let (d, ord) = degeneracy(&self.0);
        (d, ord.order().to_vec())
    }

    /// `(width, decomposition)`.
    #[pyo3(signature = (cap = TREEWIDTH_CAP))]
    fn treewidth(&self, py: Python<'_>, cap: usize) -> PyResult<(usize, Py<PyAny>)> {
        let (w, td) = treewidth_exact_capped(&self.0, cap).map_err(err)?;
        Ok((w, to_py(py, &td)?))
    }

    /// `(value, model)` for shallow minors of depth `r`.
    #[pyo3(signature = (r, cap = EXPANSION_CAP))]
    fn nabla(&self, py: Python<'_>, r: usize, cap: usize) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
        let (v, model) = nabla_capped(&self.0, r, cap).map_err(err)?;
        Ok((ratio(py, v)?, to_py(py, &model)?))
    }

    /// `(value, witness)` for topological minors of depth `r`.
    #[pyo3(signature = (r, cap = EXPANSION_CAP))]
    fn topo_nabla(&self, py: Python<'_>, r: usize, cap: usize) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
        let (v, w) = topo_nabla_capped(&self.0, r, cap).map_err(err)?;
        Ok((ratio(py, v)?, to_py(py, &w)?))
    }

    /// `(value, ordering)`; `greedy` skips the exact search.
    #[pyo3(signature = (r, greedy = false, cap = SCOL_CAP))]
    fn scol(&self, r: usize, greedy: bool, cap: usize) -> PyResult<(usize, Vec<u32>)> {
        let (s, ord) = match greedy {
            true => scol_greedy(&self.0, r),
            false => scol_exact_capped(&self.0, r, cap).map_err(err)?,
        };
        Ok((s, ord.order().to_vec()))
    }

    /// `(colors, coloring)`.
    #[pyo3(signature = (cap = ACYCLIC_CAP))]
    fn acyclic_chromatic_number(&self, cap: usize) -> PyResult<(usize, BTreeMap<u32, usize>)> {
        acyclic_chromatic_exact_capped(&self.0, cap).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.0.n(), self.0.m())
    }
}

#[pyclass(name = "AbstractDrawing", module = "bpl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyAbstractDrawing(bpl_core::AbstractDrawing);

#[pymethods]
impl PyAbstractDrawing {
    /// `crossings` holds `(e, f, multiplicity)` triples over edge ids.
    #[new]
    fn new(graph: &PyGraph, crossings: Vec<(usize, usize, u32)>) -> PyResult<Self> {
        Ok(PyAbstractDrawing(
            bpl_core::AbstractDrawing::new(graph.0.clone(), crossings, None).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn from_json(data: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyAbstractDrawing(from_py(data)?))
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0).map_err(err)
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph().clone())
    }

    #[getter]
    fn crossings(&self) -> Vec<(usize, usize, u32)> {
        self.0.crossings().iter().map(|c| (c.e, c.f, c.multiplicity)).collect()
    }

    fn independent_pairs(&self) -> Vec<(usize, usize)> {
        self.0.independent_pairs()
    }

    fn gap_number(&self, py: Python<'_>) -> PyResult<(usize, Py<PyAny>)> {
        let (k, cert) = gap_number(&self.0);
        Ok((k, to_py(py, &cert)?))
    }

    fn cover_number(&self, py: Python<'_>) -> PyResult<(usize, Py<PyAny>)> {
        let (k, cert) = cover_number(&self.0);
        Ok((k, to_py(py, &cert)?))
    }

    fn matching_planar_number(&self) -> usize {
        matching_planar_number(&self.0)
    }

    /// The certificate's `optimal` field is false when the search budget
    /// ran out.
    #[pyo3(signature = (budget = None))]
    fn gap_cover_number(&self, py: Python<'_>, budget: Option<usize>) -> PyResult<(usize, Py<PyAny>)> {
        let (k, cert) = gap_cover_number(&self.0, budget);
        Ok((k, to_py(py, &cert)?))
    }

    /// `None` if the certificate verifies, otherwise the reason.
    fn check_gap(&self, certificate: &Bound<'_, PyAny>) -> PyResult<Option<String>> {
        check_gap(&self.0, &from_py::<GapCertificate>(certificate)?).map_err(err)
    }

    fn check_cover(&self, certificate: &Bound<'_, PyAny>) -> PyResult<Option<String>> {
        check_cover(&self.0, &from_py::<CoverCertificate>(certificate)?).map_err(err)
    }

    fn check_gap_cover(&self, certificate: &Bound<'_, PyAny>) -> PyResult<Option<String>> {
        check_gap_cover(&self.0, &from_py::<GapCoverCertificate>(certificate)?).map_err(err)
    }

    /// Drawing of a shallow minor with its gap-cover certificate.
    fn minor_drawing(
        &self,
        py: Python<'_>,
        certificate: &Bound<'_, PyAny>,
        model: &Bound<'_, PyAny>,
    ) -> PyResult<Py<PyAny>> {
        let md = minor_drawing(&self.0, &from_py(certificate)?, &from_py(model)?).map_err(err)?;
        to_py(py, &md)
    }

    /// `(drawing, certificate)` after contracting subdivision paths.
    fn contract(
        &self,
        py: Python<'_>,
        certificate: &Bound<'_, PyAny>,
        subdivision: &Bound<'_, PyAny>,
    ) -> PyResult<(PyAbstractDrawing, Py<PyAny>)> {
        let (a, cert) = contract_subdivision(&self.0, &from_py(certificate)?, &from_py(subdivision)?).map_err(err)?;
        Ok((PyAbstractDrawing(a), to_py(py, &cert)?))
    }

    /// `(subgraph, trace)`.
    fn sparsify(&self, py: Python<'_>, certificate: &Bound<'_, PyAny>, seed: u64) -> PyResult<(PyGraph, Py<PyAny>)> {
        let (h, trace) = sparsify(&self.0, &from_py(certificate)?, seed).map_err(err)?;
        Ok((PyGraph(h), to_py(py, &trace)?))
    }

    fn __repr__(&self) -> String {
        format!(
            "AbstractDrawing(n={}, m={}, crossings={})",
            self.0.graph().n(),
            self.0.graph().m(),
            self.0.total_occurrences()
        )
    }
}

#[pyclass(name = "Drawing", module = "bpl", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDrawing(bpl_core::GeometricDrawing);

#[pymethods]
impl PyDrawing {
    /// Straight-line drawing from integer coordinates.
    #[staticmethod]
    fn straight_line(graph: &PyGraph, positions: BTreeMap<u32, (i64, i64)>) -> PyResult<Self> {
        let pos = positions
            .into_iter()
            .map(|(v, (x, y))| (v, bpl_core::geometry::Point::int(x, y)))
            .collect();
        Ok(PyDrawing(
            bpl_core::GeometricDrawing::straight_line(graph.0.clone(), pos).map_err(err)?,
        ))
    }

    #[staticmethod]
    fn from_json(data: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyDrawing(from_py(data)?))
    }

    fn to_json(&self) -> PyResult<String> {
        to_json(&self.0).map_err(err)
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.graph().clone())
    }

    /// Violations as strings; empty for a valid drawing.
    fn validate(&self) -> Vec<String> {
        validate_drawing(&self.0).iter().map(|v| v.to_string()).collect()
    }

    fn crossings(&self) -> PyResult<PyAbstractDrawing> {
        Ok(PyAbstractDrawing(compute_crossings(&self.0).map_err(err)?))
    }

    fn planarize(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &planarize(&self.0).map_err(err)?)
    }

    /// Tree decomposition of the drawn graph lifted from its
    /// planarization.
    fn lift_tree_decomposition(&self, py: Python<'_>, decomposition: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let p = planarize(&self.0).map_err(err)?;
        to_py(py, &lift_tree_decomposition(&p, &from_py(decomposition)?).map_err(err)?)
    }

    /// Measures the drawing and checks every applicable bound.
    #[pyo3(signature = (name = "drawing", config = None))]
    fn verify_bounds(&self, py: Python<'_>, name: &str, config: Option<&Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let config: VerifyConfig = match config {
            Some(c) => from_py(c)?,
            None => VerifyConfig::default(),
        };
        to_py(py, &verify_bounds_core(name, &self.0, &config).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Drawing(n={}, m={})", self.0.graph().n(), self.0.graph().m())
    }
}

/// Generates an instance: `generate("star-construction", n=3)`. Returns
/// `(drawing, subdivision witness or None)`.
#[pyfunction]
#[pyo3(signature = (family, **params))]
fn generate(
    py: Python<'_>,
    family: &str,
    params: Option<&Bound<'_, pyo3::types::PyDict>>,
) -> PyResult<(PyDrawing, Py<PyAny>)> {
    let spec = pyo3::types::PyDict::new(py);
    if let Some(p) = params {
        spec.update(p.as_mapping())?;
    }
    spec.set_item("family", family)?;
    let fam: Family = from_py(spec.as_any())?;
    let inst = generate_instance(&fam).map_err(err)?;
    let witness = match &inst.subdivision {
        Some(w) => to_py(py, w)?,
        None => py.None(),
    };
    Ok((PyDrawing(inst.drawing), witness))
}

/// Closed-form bound values, rounded up where irrational.
#[pyfunction]
#[pyo3(signature = (k, r = 0, g = 0, n = 0))]
fn bounds(py: Python<'_>, k: u64, r: u64, g: u64, n: u64) -> PyResult<BTreeMap<String, Py<PyAny>>> {
    closed_form_bounds(BoundParams { k, r, g, n })
        .into_iter()
        .map(|(name, b)| Ok((name.to_string(), fraction(py, rational_string(&b.value))?)))
        .collect()
}

#[pyfunction]
fn d_k(py: Python<'_>, k: u64) -> PyResult<Py<PyAny>> {
    fraction(py, rational_string(&d_k_core(k)))
}

/// Runs a pipeline spec and returns the result bundle.
#[pyfunction]
fn pipeline(py: Python<'_>, spec: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
    let text: String = match spec.cast::<PyString>() {
        Ok(s) => s.to_string(),
        Err(_) => py.import("json")?.call_method1("dumps", (spec,))?.extract()?,
    };
    let spec = PipelineSpec::parse("<python>", &text).map_err(err)?;
    to_py(py, &run_pipeline(&spec).map_err(err)?)
}

#[pymodule]
fn bpl(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyAbstractDrawing>()?;
    m.add_class::<PyDrawing>()?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(d_k, m)?)?;
    m.add_function(wrap_pyfunction!(pipeline, m)?)?;
    let py = m.py();
    m.add("BplError", py.get_type::<BplError>())?;
    m.add("InvalidInputError", py.get_type::<InvalidInputError>())?;
    m.add("CertificateRejectedError", py.get_type::<CertificateRejectedError>())?;
    m.add("TooLargeError", py.get_type::<TooLargeError>())?;
    m.add("SCHEMA", bpl_core::SCHEMA)?;
    Ok(())
}

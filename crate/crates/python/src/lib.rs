//! Python bindings. Models are built from their text formats; reports come
//! back as plain dicts and lists.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use roc_core::alignment::{self as al, ComponentMap, PlaceCorrespondence};
use roc_core::casebase::{self as cb, SimilarityWeights};
use roc_core::report::{render_report, ReportFormat};
use roc_core::{dsl, Id, DEFAULT_BOUND};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn strings(ids: &BTreeSet<Id>) -> Vec<String> {
    ids.iter().map(Id::to_string).collect()
}

fn weights(w: Option<(f64, f64, f64, f64)>) -> PyResult<SimilarityWeights> {
    match w {
        None => Ok(SimilarityWeights::default()),
        Some((g, p, s, c)) => SimilarityWeights::new(g, p, s, c).map_err(value_err),
    }
}

/// A process model parsed from `.proc` text.
#[pyclass(name = "ProcessModel", module = "roc", frozen, from_py_object)]
#[derive(Clone)]
struct PyProcessModel(roc_core::ProcessModel);

#[pymethods]
impl PyProcessModel {
    /// Parses and validates; raises ValueError on any error.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        dsl::parse_process(text).map(Self).map_err(value_err)
    }

    /// Parses without validating, so `validate` can list the violations.
    #[staticmethod]
    fn parse_unchecked(text: &str) -> PyResult<Self> {
        dsl::parse_process_unchecked(text).map(Self).map_err(value_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    #[getter]
    fn kind(&self) -> String {
        self.0.kind.to_string()
    }

    #[getter]
    fn places(&self) -> Vec<String> {
        self.0.places.iter().map(|p| p.id.to_string()).collect()
    }

    #[getter]
    fn fragments(&self) -> Vec<String> {
        self.0.fragments.iter().map(|f| f.id.to_string()).collect()
    }

    fn triplet(&self, fragment: &str) -> PyResult<String> {
        self.0.triplet(&fragment.into()).map_err(|e| PyKeyError::new_err(e.to_string()))
    }

    fn validate(&self) -> Vec<String> {
        self.0.validate().iter().map(ToString::to_string).collect()
    }

    #[pyo3(signature = (bound = DEFAULT_BOUND))]
    fn reachable_count(&self, bound: usize) -> usize {
        self.0.reachable(bound).len()
    }

    /// Returns exit_reachable, dead_fragments, explored_markings, bound_hit.
    #[pyo3(signature = (bound = DEFAULT_BOUND))]
    fn check_fulfilment<'py>(&self, py: Python<'py>, bound: usize) -> PyResult<Bound<'py, PyAny>> {
        let r = self.0.check_fulfilment(bound);
        let d = pyo3::types::PyDict::new(py);
        d.set_item("exit_reachable", r.exit_reachable)?;
        d.set_item("dead_fragments", strings(&r.dead_fragments))?;
        d.set_item("explored_markings", r.explored_markings)?;
        d.set_item("bound_hit", r.bound_hit)?;
        Ok(d.into_any())
    }

    fn to_text(&self) -> String {
        dsl::serialize_process(&self.0)
    }

    fn to_dot(&self) -> String {
        roc_core::dot::process_to_dot(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("ProcessModel({:?}, {} places, {} fragments)", self.0.name, self.0.places.len(), self.0.fragments.len())
    }
}

/// A goal graph parsed from `.goals` text.
#[pyclass(name = "GoalGraph", module = "roc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGoalGraph(roc_core::goals::GoalGraph);

#[pymethods]
impl PyGoalGraph {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        dsl::parse_goals(text).map(Self).map_err(value_err)
    }

    fn label(&self, node: &str) -> PyResult<String> {
        self.0
            .node(&node.into())
            .map(|n| n.label.clone())
            .ok_or_else(|| PyKeyError::new_err(node.to_string()))
    }

    /// Returns (supported, unsupported): goal -> supporting ERP nodes, and
    /// the list of unsupported goals.
    fn support_check(&self, models: Vec<PyProcessModel>) -> (BTreeMap<String, Vec<String>>, Vec<String>) {
        let refs: Vec<&roc_core::ProcessModel> = models.iter().map(|m| &m.0).collect();
        let r = self.0.support_check_all(&refs);
        let supported = r.supported.iter().map(|(g, by)| (g.to_string(), strings(by))).collect();
        (supported, strings(&r.unsupported))
    }

    fn to_text(&self) -> String {
        dsl::serialize_goals(&self.0)
    }

    fn to_dot(&self) -> String {
        roc_core::dot::goals_to_dot(&self.0)
    }
}

fn correspondence(text: Option<&str>, a: &roc_core::ProcessModel, b: &roc_core::ProcessModel) -> PyResult<PlaceCorrespondence> {
    match text {
        Some(t) => dsl::parse_correspondence(t).map_err(value_err),
        None => Ok(PlaceCorrespondence::identity(a, b)),
    }
}

/// Aligns two models. Returns the report as a dict, or as text when
/// `format` is "plain".
#[pyfunction]
#[pyo3(signature = (as_is, to_be, problems = None, corr = None, format = "structured"))]
fn align<'py>(
    py: Python<'py>,
    as_is: &PyProcessModel,
    to_be: &PyProcessModel,
    problems: Option<&str>,
    corr: Option<&str>,
    format: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let format: ReportFormat = format.parse().map_err(value_err)?;
    let corr = correspondence(corr, &as_is.0, &to_be.0)?;
    let mut report = al::align(&as_is.0, &to_be.0, &corr).map_err(value_err)?;
    if let Some(text) = problems {
        let registry = dsl::parse_registry(text).map_err(value_err)?;
        report.apply_registry(&registry).map_err(value_err)?;
    }
    let rendered = render_report(&report, format);
    match format {
        ReportFormat::Plain => Ok(rendered.into_pyobject(py)?.into_any()),
        ReportFormat::Structured => py.import("json")?.call_method1("loads", (rendered,)),
    }
}

/// Rows of (fragment, components); the last row has fragment "All".
#[pyfunction]
fn component_table(to_be: &PyProcessModel, cmap: &str) -> PyResult<Vec<(String, Vec<String>)>> {
    let map: ComponentMap = dsl::parse_components(cmap).map_err(value_err)?;
    let rows = al::component_table(&to_be.0, &map).map_err(value_err)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            let name = r.fragment.map_or_else(|| "All".to_string(), |f| f.to_string());
            (name, r.components.into_iter().collect())
        })
        .collect())
}

/// A stored project: goals, both models, their alignment and components.
#[pyclass(name = "Scenario", module = "roc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyScenario(cb::Scenario);

#[pymethods]
impl PyScenario {
    #[new]
    #[pyo3(signature = (id, name, goals, as_is, to_be, cmap = None, problems = None, corr = None))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        id: &str,
        name: &str,
        goals: &PyGoalGraph,
        as_is: &PyProcessModel,
        to_be: &PyProcessModel,
        cmap: Option<&str>,
        problems: Option<&str>,
        corr: Option<&str>,
    ) -> PyResult<Self> {
        let map = cmap.map(dsl::parse_components).transpose().map_err(value_err)?.unwrap_or_default();
        let registry = problems.map(dsl::parse_registry).transpose().map_err(value_err)?.unwrap_or_default();
        let corr = correspondence(corr, &as_is.0, &to_be.0)?;
        cb::Scenario::build(id, name, goals.0.clone(), as_is.0.clone(), to_be.0.clone(), map, corr, registry)
            .map(Self)
            .map_err(value_err)
    }

    #[getter]
    fn id(&self) -> String {
        self.0.id.to_string()
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    #[getter]
    fn to_be(&self) -> PyProcessModel {
        PyProcessModel(self.0.to_be.clone())
    }

    #[getter]
    fn metadata(&self) -> BTreeMap<String, String> {
        self.0.metadata.clone()
    }
}

/// Weighted similarity of two scenarios in [0, 1]. Weights are goals,
/// places, strategies, components; the default is equal weights.
#[pyfunction]
#[pyo3(signature = (a, b, weights = None))]
fn similarity(a: &PyScenario, b: &PyScenario, weights: Option<(f64, f64, f64, f64)>) -> PyResult<f64> {
    Ok(cb::similarity(&a.0, &b.0, &self::weights(weights)?))
}

/// A directory of stored scenarios.
#[pyclass(name = "CaseBase", module = "roc")]
struct PyCaseBase(cb::CaseBase);

#[pymethods]
impl PyCaseBase {
    /// An empty, in-memory case base.
    #[new]
    fn new() -> Self {
        Self(cb::CaseBase::new())
    }

    #[staticmethod]
    fn load(dir: PathBuf) -> PyResult<Self> {
        cb::load(&dir).map(Self).map_err(value_err)
    }

    fn save(&mut self, dir: PathBuf) -> PyResult<()> {
        cb::save(&mut self.0, &dir).map_err(value_err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn ids(&self) -> Vec<String> {
        self.0.scenarios.keys().map(Id::to_string).collect()
    }

    fn get(&self, id: &str) -> PyResult<PyScenario> {
        self.0.get(&id.into()).cloned().map(PyScenario).ok_or_else(|| PyKeyError::new_err(id.to_string()))
    }

    #[pyo3(signature = (scenario, overwrite = false))]
    fn retain(&mut self, scenario: &PyScenario, overwrite: bool) -> PyResult<()> {
        self.0.retain(scenario.0.clone(), overwrite).map_err(value_err)
    }

    /// The `k` most similar scenarios as (id, score), best first.
    #[pyo3(signature = (query, k = 1, weights = None))]
    fn retrieve(&self, query: &PyScenario, k: usize, weights: Option<(f64, f64, f64, f64)>) -> PyResult<Vec<(String, f64)>> {
        let ranked = self.0.retrieve(&query.0, k, &self::weights(weights)?).map_err(value_err)?;
        Ok(ranked.into_iter().map(|(id, s)| (id.to_string(), s)).collect())
    }
}

#[pymodule]
fn roc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyProcessModel>()?;
    m.add_class::<PyGoalGraph>()?;
    m.add_class::<PyScenario>()?;
    m.add_class::<PyCaseBase>()?;
    m.add_function(wrap_pyfunction!(align, m)?)?;
    m.add_function(wrap_pyfunction!(component_table, m)?)?;
    m.add_function(wrap_pyfunction!(similarity, m)?)?;
    m.add("DEFAULT_BOUND", DEFAULT_BOUND)?;
    Ok(())
}

//! Python bindings: `import rhg`.

use std::path::PathBuf;

use pyo3::exceptions::{PyArithmeticError, PyIOError, PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;

use rhg_core::analysis::{center_clique, connected_components, diameter_auto, distance_to_center, DIAMETER_CAP};
use rhg_core::explorer::{boundary_path_audit, expose, BoundaryConfig, ExposeConfig};
use rhg_core::graph::{build, load_graph, load_points, save_graph, save_points};
use rhg_core::measure::{mu_ball_origin_approx, mu_ball_origin_exact, run_check, BandConstants, CheckConfig};
use rhg_core::report::{analyze, ReportOptions};
use rhg_core::sampler::sample_model;
use rhg_core::{geometry, Builder, Error, Graph, ModelParams, PolarPoint, SampleModel, SampleSet};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NumericHealth(_) => PyArithmeticError::new_err(e.to_string()),
        Error::Io { .. } => PyIOError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

/// Serializes through JSON into plain Python containers.
fn to_object<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(PyModule::import(py, "json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "ModelParams", module = "rhg", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyModelParams {
    inner: ModelParams,
}

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (alpha, n, C = 0.0))]
    #[allow(non_snake_case)]
    fn new(alpha: f64, n: u64, C: f64) -> PyResult<Self> {
        ModelParams::new(alpha, C, n).map(|inner| PyModelParams { inner }).map_err(to_py)
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha
    }

    #[getter(C)]
    fn big_c(&self) -> f64 {
        self.inner.big_c
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n
    }

    /// Disk radius `R = 2 ln n + C`.
    #[getter(R)]
    fn radius(&self) -> f64 {
        self.inner.radius
    }

    fn __repr__(&self) -> String {
        let p = &self.inner;
        format!("ModelParams(alpha={}, n={}, C={}, R={})", p.alpha, p.n, p.big_c, p.radius)
    }
}

#[pyclass(name = "PointSet", module = "rhg", skip_from_py_object)]
#[derive(Clone)]
struct PyPointSet {
    inner: SampleSet,
}

#[pymethods]
impl PyPointSet {
    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        load_points(&path).map(|inner| PyPointSet { inner }).map_err(to_py)
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        save_points(&self.inner, &path).map_err(to_py)
    }

    #[getter]
    fn params(&self) -> PyModelParams {
        PyModelParams { inner: self.inner.params }
    }

    #[getter]
    fn seed(&self) -> u64 {
        self.inner.seed
    }

    #[getter]
    fn model(&self) -> &'static str {
        self.inner.model.as_str()
    }

    /// Vertex count, probes included.
    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn radii(&self) -> Vec<f64> {
        self.inner.all_points().map(|p| p.r).collect()
    }

    fn thetas(&self) -> Vec<f64> {
        self.inner.all_points().map(|p| p.theta).collect()
    }

    #[getter]
    fn probe_count(&self) -> usize {
        self.inner.probes.len()
    }

    /// Adds a probe vertex at `(r, theta)` and returns its vertex index.
    fn add_probe(&mut self, r: f64, theta: f64) -> PyResult<usize> {
        self.inner.add_probe(PolarPoint::new(r, theta)).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!(
            "PointSet(n={}, probes={}, seed={}, model={})",
            self.inner.points.len(),
            self.inner.probes.len(),
            self.inner.seed,
            self.inner.model.as_str()
        )
    }
}

#[pyclass(name = "Graph", module = "rhg", frozen)]
struct PyGraph {
    inner: Graph,
}

impl PyGraph {
    fn check_vertex(&self, v: usize) -> PyResult<()> {
        if v < self.inner.vertex_count() {
            Ok(())
        } else {
            Err(PyIndexError::new_err(format!("vertex {v} out of range")))
        }
    }
}

#[pymethods]
impl PyGraph {
    #[staticmethod]
    fn load(points: PathBuf, edges: PathBuf) -> PyResult<Self> {
        load_graph(&points, &edges).map(|inner| PyGraph { inner }).map_err(to_py)
    }

    fn save(&self, points: PathBuf, edges: PathBuf) -> PyResult<()> {
        save_graph(&self.inner, &points, &edges).map_err(to_py)
    }

    #[getter]
    fn params(&self) -> PyModelParams {
        PyModelParams { inner: *self.inner.params() }
    }

    #[getter]
    fn points(&self) -> PyPointSet {
        PyPointSet { inner: self.inner.points.clone() }
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn neighbors(&self, v: usize) -> PyResult<Vec<u32>> {
        self.check_vertex(v)?;
        Ok(self.inner.neighbors(v).to_vec())
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        self.check_vertex(v)?;
        Ok(self.inner.degree(v))
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.inner.has_edge(u, v))
    }

    fn radius(&self, v: usize) -> PyResult<f64> {
        self.check_vertex(v)?;
        Ok(self.inner.radius_of(v))
    }

    /// Edge list with `u < v`, sorted.
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().collect()
    }

    /// Components as vertex lists, largest first.
    fn components(&self) -> Vec<Vec<usize>> {
        connected_components(&self.inner).members
    }

    /// `(value, exact)` for the giant component.
    #[pyo3(signature = (cap = DIAMETER_CAP))]
    fn giant_diameter(&self, cap: usize) -> (u32, bool) {
        let comps = connected_components(&self.inner);
        match comps.members.first() {
            Some(giant) => {
                let d = diameter_auto(&self.inner, giant, cap);
                (d.value, d.exact)
            }
            None => (0, true),
        }
    }

    fn center_clique(&self) -> Vec<usize> {
        center_clique(&self.inner).members
    }

    /// Hop distance to the center clique; `None` when unreachable.
    fn distance_to_center(&self) -> Vec<Option<u32>> {
        distance_to_center(&self.inner)
    }

    /// The `rhg-report v1` summary as a dict.
    #[pyo3(signature = (diameter_cap = DIAMETER_CAP, timings = false))]
    fn report(&self, py: Python<'_>, diameter_cap: usize, timings: bool) -> PyResult<Py<PyAny>> {
        let opts = ReportOptions { band: BandConstants::default(), diameter_cap, timings };
        to_object(py, &analyze(&self.inner, &opts))
    }

    /// Runs the exploration procedure from `query`; returns the trace as a dict.
    #[pyo3(signature = (query, xi = 1.0, epsilon = 0.1, window = None, max_phases = None))]
    fn expose(
        &self,
        py: Python<'_>,
        query: usize,
        xi: f64,
        epsilon: f64,
        window: Option<f64>,
        max_phases: Option<usize>,
    ) -> PyResult<Py<PyAny>> {
        self.check_vertex(query)?;
        let config = ExposeConfig { xi, epsilon, window_width: window, max_phases, ..ExposeConfig::default() };
        config.validate().map_err(to_py)?;
        let schedule = config.schedule(self.inner.params()).map_err(to_py)?;
        let out = expose(&self.inner, query, &config, &schedule).map_err(to_py)?;
        to_object(py, &out)
    }

    #[pyo3(signature = (xi = 1.0, k_length = 10.0, k_spread = 10.0))]
    fn boundary_audit(&self, py: Python<'_>, xi: f64, k_length: f64, k_spread: f64) -> PyResult<Py<PyAny>> {
        let audit = boundary_path_audit(&self.inner, &BoundaryConfig { xi, k_length, k_spread }).map_err(to_py)?;
        to_object(py, &audit)
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// Samples a point set from the model.
#[pyfunction]
#[pyo3(signature = (params, seed = 0, model = "uniform"))]
fn sample(params: &PyModelParams, seed: u64, model: &str) -> PyResult<PyPointSet> {
    let model: SampleModel = model.parse().map_err(to_py)?;
    Ok(PyPointSet { inner: sample_model(&params.inner, seed, model) })
}

/// Builds the graph of a point set with the `"fast"` or `"naive"` builder.
#[pyfunction]
#[pyo3(signature = (points, builder = "fast"))]
fn build_graph(points: &PyPointSet, builder: &str) -> PyResult<PyGraph> {
    let b = match builder {
        "fast" => Builder::Fast,
        "naive" => Builder::Naive,
        other => return Err(PyValueError::new_err(format!("unknown builder '{other}'"))),
    };
    build(points.inner.clone(), b).map(|inner| PyGraph { inner }).map_err(to_py)
}

/// Shorthand for `build_graph(sample(ModelParams(alpha, n, C), seed))`.
#[pyfunction]
#[pyo3(signature = (alpha, n, C = 0.0, seed = 0, model = "uniform", builder = "fast"))]
#[allow(non_snake_case)]
fn generate(alpha: f64, n: u64, C: f64, seed: u64, model: &str, builder: &str) -> PyResult<PyGraph> {
    let params = PyModelParams::new(alpha, n, C)?;
    build_graph(&sample(&params, seed, model)?, builder)
}

#[pyfunction]
fn hyperbolic_distance(r1: f64, theta1: f64, r2: f64, theta2: f64) -> f64 {
    geometry::hyperbolic_distance(&PolarPoint::new(r1, theta1), &PolarPoint::new(r2, theta2))
}

#[pyfunction]
fn within_distance(r1: f64, theta1: f64, r2: f64, theta2: f64, rho: f64) -> bool {
    geometry::within_distance(&PolarPoint::new(r1, theta1), &PolarPoint::new(r2, theta2), rho)
}

/// Angle at the origin of a triangle with sides `a`, `b` from the origin and `c` opposite.
#[pyfunction]
fn angle_at_origin(a: f64, b: f64, c: f64) -> PyResult<f64> {
    geometry::angle_at_origin(a, b, c).map_err(to_py)
}

/// Model probability mass of `B_O(rho)`.
#[pyfunction]
fn mu_ball(rho: f64, params: &PyModelParams) -> PyResult<f64> {
    mu_ball_origin_exact(rho, &params.inner).map_err(to_py)
}

/// Leading-order approximation of `mu_ball`.
#[pyfunction]
fn mu_ball_approx(rho: f64, params: &PyModelParams) -> f64 {
    mu_ball_origin_approx(rho, &params.inner)
}

/// Closed form vs Monte-Carlo rows for one configuration of the check grid.
#[pyfunction]
#[pyo3(signature = (radius, alpha, variant = 0, samples = 1_000_000, seed = 0))]
fn measure_check(
    py: Python<'_>,
    radius: f64,
    alpha: f64,
    variant: usize,
    samples: u64,
    seed: u64,
) -> PyResult<Py<PyAny>> {
    let rows =
        run_check(&CheckConfig { radius, alpha, variant }, samples, seed, &BandConstants::default()).map_err(to_py)?;
    to_object(py, &rows)
}

#[pymodule]
fn rhg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", rhg_core::VERSION)?;
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyPointSet>()?;
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(sample, m)?)?;
    m.add_function(wrap_pyfunction!(build_graph, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(hyperbolic_distance, m)?)?;
    m.add_function(wrap_pyfunction!(within_distance, m)?)?;
    m.add_function(wrap_pyfunction!(angle_at_origin, m)?)?;
    m.add_function(wrap_pyfunction!(mu_ball, m)?)?;
    m.add_function(wrap_pyfunction!(mu_ball_approx, m)?)?;
    m.add_function(wrap_pyfunction!(measure_check, m)?)?;
    Ok(())
}

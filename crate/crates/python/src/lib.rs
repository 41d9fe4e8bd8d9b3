use std::fmt::Display;

use gallai_core::bounds::evaluate_bounds;
use gallai_core::constructions::{layered_lower_bound, matching_extremal, p3_forest_lower_bound, paley_coloring, rook_coloring};
use gallai_core::corpus::random_gallai;
use gallai_core::detect::{find_mono, max_mono_star};
use gallai_core::format::{export_dot, parse_coloring, serialize, DotOptions};
use gallai_core::partition::{find_finest_partition, validate_partition};
use gallai_core::search::{gallai_ramsey_number, ramsey_number, verify_value, SearchConfig, Symmetry};
use gallai_core::{find_gallai_partition, Color};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

fn err(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Converts through JSON so Python sees plain dicts and lists.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(err)?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A complete graph with every edge colored from `0..k`.
#[pyclass(module = "gallai", frozen, from_py_object)]
#[derive(Clone)]
struct EdgeColoring(gallai_core::EdgeColoring);

#[pymethods]
impl EdgeColoring {
    /// Builds from a full `n x n` matrix; the diagonal is ignored.
    #[new]
    fn new(k: usize, matrix: Vec<Vec<Color>>) -> PyResult<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(PyValueError::new_err("matrix is not square"));
        }
        gallai_core::EdgeColoring::from_fn(n, k, |u, v| matrix[u][v]).map(Self).map_err(err)
    }

    /// Parses the text format written by `to_text`.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        parse_coloring(text).map(Self).map_err(err)
    }

    fn to_text(&self) -> String {
        serialize(&self.0)
    }

    #[pyo3(signature = (clusters = false))]
    fn to_dot(&self, clusters: bool) -> PyResult<String> {
        let clusters = if clusters {
            Some(find_gallai_partition(&self.0).map_err(err)?.parts)
        } else {
            None
        };
        let options = DotOptions {
            numeric_fallback: true,
            clusters,
        };
        export_dot(&self.0, &options).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    fn color(&self, u: usize, v: usize) -> PyResult<Color> {
        if u == v || u >= self.0.n() || v >= self.0.n() {
            return Err(PyValueError::new_err(format!("no edge {u}-{v}")));
        }
        Ok(self.0.color(u, v))
    }

    fn matrix(&self) -> Vec<Vec<Option<Color>>> {
        let n = self.0.n();
        (0..n)
            .map(|u| (0..n).map(|v| (u != v).then(|| self.0.color(u, v))).collect())
            .collect()
    }

    fn is_gallai(&self) -> bool {
        self.0.is_gallai()
    }

    fn rainbow_triangle(&self) -> Option<[usize; 3]> {
        self.0.find_rainbow_triangle()
    }

    fn palette_full(&self) -> bool {
        self.0.palette_full()
    }

    fn induced(&self, vertices: Vec<usize>) -> PyResult<Self> {
        self.0.induced(&vertices).map(Self).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.n()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("EdgeColoring(n={}, k={})", self.0.n(), self.0.k())
    }
}

/// A forbidden graph: `K2,3`, `C4`, `3P2`, `2P3`, `S4`, `K3`, ...
#[pyclass(module = "gallai", frozen, from_py_object)]
#[derive(Clone)]
struct TargetGraph(gallai_core::TargetGraph);

#[pymethods]
impl TargetGraph {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(err)
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    /// Number of vertices of the smaller side, for bipartite targets.
    #[getter]
    fn s_value(&self) -> Option<usize> {
        self.0.s_value()
    }

    fn is_bipartite(&self) -> bool {
        self.0.is_bipartite()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("TargetGraph('{}')", self.0)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[derive(FromPyObject)]
enum TargetArg {
    Parsed(TargetGraph),
    Text(String),
}

impl TargetArg {
    fn get(&self) -> PyResult<gallai_core::TargetGraph> {
        match self {
            TargetArg::Parsed(t) => Ok(t.0),
            TargetArg::Text(s) => s.parse().map_err(err),
        }
    }
}

fn parse_targets(list: &[TargetArg]) -> PyResult<Vec<gallai_core::TargetGraph>> {
    list.iter().map(TargetArg::get).collect()
}

fn config(budget: u64, threads: usize, symmetry: bool) -> SearchConfig {
    SearchConfig {
        budget,
        threads,
        symmetry: if symmetry { Symmetry::default() } else { Symmetry::off() },
        ..SearchConfig::default()
    }
}

/// Gallai partition (the finest one with `finest=True`) as a dict with `parts` and `reduced_colors`.
#[pyfunction]
#[pyo3(signature = (coloring, finest = false))]
fn gallai_partition(py: Python<'_>, coloring: &EdgeColoring, finest: bool) -> PyResult<Py<PyAny>> {
    let p = if finest {
        find_finest_partition(&coloring.0).map_err(err)?.0
    } else {
        find_gallai_partition(&coloring.0).map_err(err)?
    };
    validate_partition(&coloring.0, &p).map_err(err)?;
    to_py(py, &p)
}

/// A monochromatic copy of `target` in `color`, or None.
#[pyfunction]
fn find_mono_copy(py: Python<'_>, coloring: &EdgeColoring, color: Color, target: TargetArg) -> PyResult<Py<PyAny>> {
    match find_mono(&coloring.0, color, &target.get()?).map_err(err)? {
        Some(w) => to_py(py, &w),
        None => Ok(py.None()),
    }
}

/// Largest monochromatic star as `(color, center, leaves)`.
#[pyfunction]
fn largest_mono_star(coloring: &EdgeColoring) -> (Color, usize, usize) {
    let s = max_mono_star(&coloring.0);
    (s.color, s.center, s.leaves)
}

#[pyfunction]
#[pyo3(signature = (target, k, r_value = None))]
fn bounds(py: Python<'_>, target: TargetArg, k: usize, r_value: Option<u64>) -> PyResult<Py<PyAny>> {
    to_py(py, &evaluate_bounds(&target.get()?, k, r_value).map_err(err)?)
}

/// `R(h1, h2)` with both certificates.
#[pyfunction]
#[pyo3(signature = (h1, h2, budget = 1_000_000_000, threads = 1, symmetry = true))]
fn ramsey(py: Python<'_>, h1: TargetArg, h2: TargetArg, budget: u64, threads: usize, symmetry: bool) -> PyResult<Py<PyAny>> {
    let t = [h1.get()?, h2.get()?];
    let cfg = config(budget, threads, symmetry);
    let report = py.detach(|| ramsey_number(t, 0, &cfg)).map_err(err)?;
    to_py(py, &report)
}

/// `gr_k(K3 : H1, .., Hk)` with both certificates.
#[pyfunction]
#[pyo3(signature = (targets, budget = 1_000_000_000, threads = 1, symmetry = true))]
fn gallai_ramsey(py: Python<'_>, targets: Vec<TargetArg>, budget: u64, threads: usize, symmetry: bool) -> PyResult<Py<PyAny>> {
    let t = parse_targets(&targets)?;
    let cfg = config(budget, threads, symmetry);
    let report = py.detach(|| gallai_ramsey_number(&t, 0, &cfg)).map_err(err)?;
    to_py(py, &report)
}

/// Verdict on a claimed Gallai-Ramsey value: `CONFIRMED`, `TOO_HIGH`,
/// `TOO_LOW` or `BUDGET_EXCEEDED`, plus certificates.
#[pyfunction]
#[pyo3(signature = (targets, claimed, budget = 1_000_000_000, threads = 1))]
fn verify(py: Python<'_>, targets: Vec<TargetArg>, claimed: usize, budget: u64, threads: usize) -> PyResult<Py<PyAny>> {
    let t = parse_targets(&targets)?;
    let cfg = config(budget, threads, true);
    let v = py.detach(|| verify_value(&t, claimed, &cfg)).map_err(err)?;
    to_py(py, &v)
}

#[pyfunction]
fn pentagon() -> EdgeColoring {
    EdgeColoring(gallai_core::pentagon())
}

#[pyfunction]
fn paley(q: usize) -> PyResult<EdgeColoring> {
    paley_coloring(q).map(EdgeColoring).map_err(err)
}

#[pyfunction]
fn rook(side: usize) -> PyResult<EdgeColoring> {
    rook_coloring(side).map(EdgeColoring).map_err(err)
}

/// Base coloring plus apex layers in the extra `k - 2` colors.
#[pyfunction]
fn layered(base: &EdgeColoring, target: TargetArg, k: usize) -> PyResult<EdgeColoring> {
    layered_lower_bound(&base.0, &target.get()?, k).map(EdgeColoring).map_err(err)
}

#[pyfunction]
fn matching_construction(sizes: Vec<usize>) -> PyResult<EdgeColoring> {
    matching_extremal(&sizes).map(EdgeColoring).map_err(err)
}

#[pyfunction]
fn p3_forest_construction(sizes: Vec<usize>) -> PyResult<EdgeColoring> {
    p3_forest_lower_bound(&sizes).map(EdgeColoring).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, k, seed = 0))]
fn random_gallai_coloring(n: usize, k: usize, seed: u64) -> PyResult<EdgeColoring> {
    if n == 0 || k == 0 || n > gallai_core::coloring::MAX_VERTICES {
        return Err(PyValueError::new_err(format!("bad size n={n}, k={k}")));
    }
    Ok(EdgeColoring(random_gallai(&mut ChaCha8Rng::seed_from_u64(seed), n, k)))
}

#[pymodule]
fn gallai(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EdgeColoring>()?;
    m.add_class::<TargetGraph>()?;
    m.add_function(wrap_pyfunction!(gallai_partition, m)?)?;
    m.add_function(wrap_pyfunction!(find_mono_copy, m)?)?;
    m.add_function(wrap_pyfunction!(largest_mono_star, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(ramsey, m)?)?;
    m.add_function(wrap_pyfunction!(gallai_ramsey, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(pentagon, m)?)?;
    m.add_function(wrap_pyfunction!(paley, m)?)?;
    m.add_function(wrap_pyfunction!(rook, m)?)?;
    m.add_function(wrap_pyfunction!(layered, m)?)?;
    m.add_function(wrap_pyfunction!(matching_construction, m)?)?;
    m.add_function(wrap_pyfunction!(p3_forest_construction, m)?)?;
    m.add_function(wrap_pyfunction!(random_gallai_coloring, m)?)?;
    Ok(())
}

//! Python bindings. Vertices are 1-based, as in graph files and the CLI.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::{PyIndexError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use weighted_coxeter::classify::{classify, DEFAULT_PROBE_BOUND};
use weighted_coxeter::enumerate::bfs_enumerate;
use weighted_coxeter::game::imo_pentagon_run;
use weighted_coxeter::georep::{generalized_generators, verify_coxeter_relations};
use weighted_coxeter::presets::{preset, presets as all_presets};
use weighted_coxeter::{Cyclotomic, EdgeCoefficients, Error, Order, Sign};

fn err(e: Error) -> PyErr {
    match e {
        Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        Error::VertexOutOfRange { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

/// An exact element of a cyclotomic field.
#[pyclass(name = "Cyclotomic", frozen, from_py_object)]
#[derive(Clone)]
struct PyCyclotomic(Cyclotomic);

/// Accepts a Cyclotomic, an int, or a literal string such as "zeta(5)^2 - 1/3".
fn scalar(obj: &Bound<'_, PyAny>) -> PyResult<Cyclotomic> {
    if let Ok(c) = obj.extract::<PyCyclotomic>() {
        return Ok(c.0);
    }
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(Cyclotomic::from_integer(n));
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(err);
    }
    Err(PyValueError::new_err(
        "expected a Cyclotomic, an int or a literal string",
    ))
}

fn scalars(obj: &Bound<'_, PyAny>) -> PyResult<Vec<Cyclotomic>> {
    obj.try_iter()?.map(|x| scalar(&x?)).collect()
}

fn wrap(v: Vec<Cyclotomic>) -> Vec<PyCyclotomic> {
    v.into_iter().map(PyCyclotomic).collect()
}

#[pymethods]
impl PyCyclotomic {
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        scalar(value).map(Self)
    }

    /// ζ_n^k = exp(2πik/n).
    #[staticmethod]
    #[pyo3(signature = (n, k = 1))]
    fn zeta(n: u32, k: i64) -> PyResult<Self> {
        Cyclotomic::zeta_pow(n, k).map(Self).map_err(err)
    }

    #[getter]
    fn conductor(&self) -> u32 {
        self.0.conductor()
    }

    fn is_real(&self) -> bool {
        self.0.is_real()
    }

    fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inverse().map(Self).map_err(err)
    }

    /// Multiplicative order, or None when infinite.
    fn order(&self) -> PyResult<Option<u64>> {
        Ok(match self.0.order().map_err(err)? {
            Order::Finite(m) => Some(m),
            Order::Infinite => None,
        })
    }

    /// -1, 0 or 1; raises for non-real values.
    fn sign(&self) -> PyResult<i8> {
        Ok(match self.0.sign().map_err(err)? {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        })
    }

    fn decimal(&self) -> String {
        self.0.decimal()
    }

    fn __complex__(&self) -> (f64, f64) {
        self.0.to_complex_f64()
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&self.0 + &scalar(other)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&self.0 - &scalar(other)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&scalar(other)? - &self.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&self.0 * &scalar(other)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(other)
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.checked_div(&scalar(other)?).map(Self).map_err(err)
    }

    fn __rtruediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        scalar(other)?.checked_div(&self.0).map(Self).map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __pow__(&self, exp: i64, _modulo: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        self.0.pow(exp).map(Self).map_err(err)
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        scalar(other).is_ok_and(|o| o == self.0)
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Cyclotomic('{}')", self.0)
    }
}

/// A Coxeter graph with a weight function, parsed from the text or JSON graph format.
#[pyclass(name = "WeightedGraph", frozen, from_py_object)]
#[derive(Clone)]
struct PyWeightedGraph(weighted_coxeter::WeightedGraph);

#[pymethods]
impl PyWeightedGraph {
    #[new]
    fn new(source: &str) -> PyResult<Self> {
        weighted_coxeter::WeightedGraph::parse(source)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        let p = preset(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown preset {name:?}")))?;
        p.graph().map(Self).map_err(err)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.0.vertex_count()
    }

    /// (i, j, m) for each edge with i < j; m is an int or "inf".
    fn edges(&self) -> Vec<(usize, usize, String)> {
        self.0
            .graph
            .edges()
            .map(|(i, j, m)| (i + 1, j + 1, m.to_string()))
            .collect()
    }

    fn weight(&self, i: usize, j: usize) -> Option<PyCyclotomic> {
        let (i, j) = (i.checked_sub(1)?, j.checked_sub(1)?);
        self.0.weights.get(i, j).cloned().map(PyCyclotomic)
    }

    /// Descriptions of each way the weight function fails to be legal.
    fn validate(&self) -> Vec<String> {
        self.0.validate().iter().map(ToString::to_string).collect()
    }

    fn is_balanced(&self) -> PyResult<bool> {
        Ok(self.0.check_balanced().map_err(err)?.is_balanced())
    }

    /// Potentials with f(i, j) = wt(j)/wt(i), or None when unbalanced.
    fn potentials(&self) -> PyResult<Option<Vec<PyCyclotomic>>> {
        let cert = self.0.check_balanced().map_err(err)?;
        Ok(cert.potentials().map(|p| wrap(p.to_vec())))
    }

    /// Faithfulness verdict as a dict; `verdict` holds the kind.
    #[pyo3(signature = (bound = DEFAULT_PROBE_BOUND))]
    fn classify<'py>(&self, py: Python<'py>, bound: i64) -> PyResult<Bound<'py, PyAny>> {
        let v = classify(&self.0.graph, &self.0.weights, bound).map_err(err)?;
        json(py, &v)
    }

    /// The generalized geometric generators ω_i as nested lists.
    #[pyo3(signature = (asymmetric_k = false))]
    fn generators(&self, asymmetric_k: bool) -> PyResult<Vec<Vec<Vec<PyCyclotomic>>>> {
        let gens = generalized_generators(
            &self.0.graph,
            &self.0.weights,
            &coefficients(&self.0, asymmetric_k),
        )
        .map_err(err)?;
        Ok(gens
            .iter()
            .map(|m| m.rows().into_iter().map(wrap).collect())
            .collect())
    }

    /// Checks (ω_i ω_j)^m = 1 exactly; infinite labels are checked up to `bound`.
    #[pyo3(signature = (bound = 20, asymmetric_k = false))]
    fn verify_relations(&self, bound: u64, asymmetric_k: bool) -> PyResult<bool> {
        let gens = generalized_generators(
            &self.0.graph,
            &self.0.weights,
            &coefficients(&self.0, asymmetric_k),
        )
        .map_err(err)?;
        Ok(verify_coxeter_relations(&gens, &self.0.graph, bound).passed())
    }

    /// Breadth-first enumeration of the image group.
    #[pyo3(signature = (budget = 100_000, asymmetric_k = false))]
    fn enumerate<'py>(
        &self,
        py: Python<'py>,
        budget: usize,
        asymmetric_k: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let gens = generalized_generators(
            &self.0.graph,
            &self.0.weights,
            &coefficients(&self.0, asymmetric_k),
        )
        .map_err(err)?;
        json(py, &bfs_enumerate(&gens, budget).report())
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!(
            "WeightedGraph({} vertices, {} edges)",
            self.0.vertex_count(),
            self.0.graph.edge_count()
        )
    }
}

fn coefficients(g: &weighted_coxeter::WeightedGraph, asymmetric_k: bool) -> EdgeCoefficients {
    if asymmetric_k {
        EdgeCoefficients::asymmetric_integers(&g.graph)
    } else {
        EdgeCoefficients::symmetric(&g.graph)
    }
}

/// Classical game for unit weights, generalized game for other balanced weights.
#[pyclass(name = "NumbersGame", frozen)]
struct PyNumbersGame(weighted_coxeter::NumbersGame);

fn vertex(v: usize, n: usize) -> PyResult<usize> {
    if v == 0 || v > n {
        return Err(PyIndexError::new_err(format!(
            "vertex {v} out of range 1..={n}"
        )));
    }
    Ok(v - 1)
}

impl PyNumbersGame {
    fn word(&self, word: Vec<usize>) -> PyResult<Vec<usize>> {
        word.into_iter()
            .map(|v| vertex(v, self.0.vertex_count()))
            .collect()
    }
}

#[pymethods]
impl PyNumbersGame {
    #[new]
    #[pyo3(signature = (graph, asymmetric_k = false))]
    fn new(graph: &PyWeightedGraph, asymmetric_k: bool) -> PyResult<Self> {
        let g = &graph.0;
        let ell = coefficients(g, asymmetric_k);
        let game = if g.weights.iter().all(|(_, w)| w.is_one()) {
            weighted_coxeter::NumbersGame::classical(&g.graph, &ell)
        } else {
            weighted_coxeter::NumbersGame::generalized(&g.graph, &g.weights, &ell)
        };
        game.map(Self).map_err(err)
    }

    #[getter]
    fn mode(&self) -> &'static str {
        match self.0.mode() {
            weighted_coxeter::game::GameMode::Classical => "classical",
            weighted_coxeter::game::GameMode::Generalized => "generalized",
        }
    }

    fn unit_start(&self) -> Vec<PyCyclotomic> {
        wrap(self.0.unit_start())
    }

    fn fire(&self, position: &Bound<'_, PyAny>, v: usize) -> PyResult<Vec<PyCyclotomic>> {
        let v = vertex(v, self.0.vertex_count())?;
        self.0.fire(&scalars(position)?, v).map(wrap).map_err(err)
    }

    /// "positive", "pseudo-negative", "zero", ...
    fn move_class(&self, position: &Bound<'_, PyAny>, v: usize) -> PyResult<String> {
        let v = vertex(v, self.0.vertex_count())?;
        let class = self.0.move_class(&scalars(position)?, v).map_err(err)?;
        Ok(serde_json::to_value(class)
            .expect("move classes serialize")
            .as_str()
            .unwrap_or_default()
            .to_string())
    }

    /// Plays `word` and returns the record as a dict with exact and decimal values.
    #[pyo3(signature = (word, start = None))]
    fn play<'py>(
        &self,
        py: Python<'py>,
        word: Vec<usize>,
        start: Option<&Bound<'_, PyAny>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let start = match start {
            Some(s) => scalars(s)?,
            None => self.0.unit_start(),
        };
        json(py, &self.0.play(&start, &self.word(word)?).map_err(err)?)
    }

    fn is_reduced(&self, word: Vec<usize>) -> PyResult<bool> {
        self.0.is_reduced(&self.word(word)?).map_err(err)
    }

    fn descent_set(&self, word: Vec<usize>) -> PyResult<Vec<usize>> {
        let d = self.0.descent_set(&self.word(word)?).map_err(err)?;
        Ok(d.into_iter().map(|v| v + 1).collect())
    }

    /// Number of positions reachable from the unit start, or None past `budget`.
    #[pyo3(signature = (budget = 100_000))]
    fn orbit_size(&self, budget: usize) -> PyResult<Option<usize>> {
        let r = self
            .0
            .reachable_positions(&self.0.unit_start(), budget)
            .map_err(err)?;
        Ok((!r.exhausted).then_some(r.positions.len()))
    }
}

/// Order m^(n-1) · n! of the monomial quotient for an n-cycle whose weight has order m.
#[pyfunction]
fn quotient_order(n: u32, m: u64) -> PyResult<u128> {
    weighted_coxeter::classify::quotient_order(n, m).map_err(err)
}

/// Pentagon game; returns (terminated, steps).
#[pyfunction]
#[pyo3(signature = (start, max_steps = 100_000))]
fn imo_pentagon(start: [i64; 5], max_steps: usize) -> PyResult<(bool, usize)> {
    let run = imo_pentagon_run(&start, max_steps).map_err(err)?;
    Ok((run.terminated, run.steps))
}

#[pyfunction]
fn presets() -> Vec<&'static str> {
    all_presets().iter().map(|p| p.name).collect()
}

#[pymodule]
fn pycoxeter(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCyclotomic>()?;
    m.add_class::<PyWeightedGraph>()?;
    m.add_class::<PyNumbersGame>()?;
    m.add_function(wrap_pyfunction!(quotient_order, m)?)?;
    m.add_function(wrap_pyfunction!(imo_pentagon, m)?)?;
    m.add_function(wrap_pyfunction!(presets, m)?)?;
    Ok(())
}

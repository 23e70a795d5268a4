//! Python bindings: instances, odds, payoff matrices, equilibrium analysis,
//! built-in cases and sampling campaigns.

use std::collections::BTreeMap;

use election_game as eg;
use election_game::{EgoismMode, Error, GameState, PoaValue, SamplerConfig, WinModel};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::RejectionBudgetExhausted { .. } | Error::TheoremViolation { .. } => {
            PyRuntimeError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse_model(s: &str) -> PyResult<WinModel> {
    s.parse().map_err(PyValueError::new_err)
}

fn parse_mode(s: &str) -> PyResult<EgoismMode> {
    s.parse().map_err(PyValueError::new_err)
}

fn one_based(s: GameState) -> (usize, usize) {
    (s.i + 1, s.j + 1)
}

fn poa_to_f64(v: Option<PoaValue>) -> Option<f64> {
    v.map(PoaValue::as_f64)
}

/// A validated game instance.
#[pyclass(name = "GameInstance", frozen, module = "pyelection")]
struct PyGameInstance {
    inner: eg::GameInstance,
}

#[pymethods]
impl PyGameInstance {
    /// `party_a` and `party_b` are sequences of `(own, rival)` pairs. With
    /// `canonicalize=True` candidates are sorted and parties ordered first.
    #[new]
    #[pyo3(signature = (b, party_a, party_b, canonicalize = false))]
    fn new(
        b: f64,
        party_a: Vec<(f64, f64)>,
        party_b: Vec<(f64, f64)>,
        canonicalize: bool,
    ) -> PyResult<Self> {
        let raw = eg::RawInstance::new(b, party_a, party_b);
        let inner = if canonicalize {
            eg::canonicalize(&raw)
        } else {
            eg::validate_instance(&raw)
        }
        .map_err(to_py)?;
        Ok(Self { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let raw = eg::RawInstance::from_json(text).map_err(to_py)?;
        let inner = eg::validate_instance(&raw).map_err(to_py)?;
        Ok(Self { inner })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn b(&self) -> f64 {
        self.inner.bound()
    }

    #[getter]
    fn party_a(&self) -> Vec<(f64, f64)> {
        self.inner
            .party_a()
            .iter()
            .map(|c| (c.own, c.rival))
            .collect()
    }

    #[getter]
    fn party_b(&self) -> Vec<(f64, f64)> {
        self.inner
            .party_b()
            .iter()
            .map(|c| (c.own, c.rival))
            .collect()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[pyo3(signature = (mode = "strict"))]
    fn is_egoistic(&self, mode: &str) -> PyResult<bool> {
        Ok(eg::is_egoistic(&self.inner, parse_mode(mode)?))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "GameInstance(b={}, party_a={:?}, party_b={:?})",
            self.inner.bound(),
            self.party_a(),
            self.party_b()
        )
    }
}

/// Probability that a candidate with total utility `u_a` beats one with `u_b`.
#[pyfunction]
fn win_probability(model: &str, u_a: f64, u_b: f64, b: f64) -> PyResult<f64> {
    let model = parse_model(model)?;
    if !(b >= 1.0 && b.is_finite()) {
        return Err(PyValueError::new_err(format!("b must be >= 1, got {b}")));
    }
    for u in [u_a, u_b] {
        if !(0.0..=b).contains(&u) {
            return Err(PyValueError::new_err(format!(
                "utility {u} outside [0, {b}]"
            )));
        }
    }
    Ok(eg::win_probability(model, u_a, u_b, b).value())
}

/// Rows of `(a, b)` payoff pairs, one row per strategy of party A.
#[pyfunction]
fn payoff_matrix(instance: &PyGameInstance, model: &str) -> PyResult<Vec<Vec<(f64, f64)>>> {
    let mat = eg::payoff_matrix(&instance.inner, parse_model(model)?);
    Ok(mat
        .rows()
        .map(|row| row.iter().map(|c| (c.a, c.b)).collect())
        .collect())
}

/// Equilibria, optimum and price of anarchy; states are 1-based `(i, j)`.
/// An unbounded PoA is reported as `inf`, a missing one as `None`.
#[pyfunction]
#[pyo3(signature = (instance, model = "linear_link", tol = eg::DEFAULT_TOL, walk = None))]
fn analyze<'py>(
    py: Python<'py>,
    instance: &PyGameInstance,
    model: &str,
    tol: f64,
    walk: Option<(usize, usize)>,
) -> PyResult<Bound<'py, PyDict>> {
    let mat = eg::payoff_matrix(&instance.inner, parse_model(model)?);
    let res = eg::analyze_matrix(&mat, tol);
    let d = PyDict::new(py);
    d.set_item("model", res.model.as_str())?;
    d.set_item("egoistic_strict", res.egoistic_strict)?;
    d.set_item("egoistic_weak", res.egoistic_weak)?;
    let pne: Vec<(usize, usize)> = res.pne.states().iter().copied().map(one_based).collect();
    d.set_item("pne", pne)?;
    d.set_item("optimal", one_based(res.optimal))?;
    d.set_item("optimal_su", res.optimal_su)?;
    d.set_item("worst_pne", res.worst_pne.map(one_based))?;
    d.set_item("worst_pne_su", res.worst_pne_su)?;
    d.set_item("poa", poa_to_f64(res.poa))?;
    if let Some((i, j)) = walk {
        if i == 0 || j == 0 {
            return Err(PyValueError::new_err("walk start is 1-based"));
        }
        let opts = eg::WalkOptions {
            tol,
            ..eg::WalkOptions::default()
        };
        let w =
            eg::best_response_walk_with(&mat, GameState::one_based(i, j), &opts).map_err(to_py)?;
        let wd = PyDict::new(py);
        let path: Vec<(usize, usize)> = w.path.iter().copied().map(one_based).collect();
        wd.set_item("path", path)?;
        let outcome = match w.outcome {
            eg::WalkOutcome::ReachedPne { .. } => "reached_pne",
            eg::WalkOutcome::CycleDetected { .. } => "cycle_detected",
            eg::WalkOutcome::StepLimit => "step_limit",
        };
        wd.set_item("outcome", outcome)?;
        wd.set_item("text", w.to_string())?;
        d.set_item("walk", wd)?;
    }
    Ok(d)
}

/// A built-in worked example: `{id, model, instance, notes}`.
#[pyfunction]
fn paper_case<'py>(py: Python<'py>, id: &str) -> PyResult<Bound<'py, PyDict>> {
    let case = eg::paper_case(id).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("id", &case.id)?;
    d.set_item("model", case.model.as_str())?;
    d.set_item(
        "instance",
        PyGameInstance {
            inner: case.instance,
        },
    )?;
    d.set_item("notes", case.expected.notes)?;
    Ok(d)
}

/// Checks every built-in case; one dict `{id, passed, diffs, warnings}` each.
#[pyfunction]
#[pyo3(signature = (overrides = None))]
fn verify_all<'py>(
    py: Python<'py>,
    overrides: Option<BTreeMap<String, f64>>,
) -> PyResult<Bound<'py, PyList>> {
    let outcomes = eg::verify_all(&overrides.unwrap_or_default());
    let list = PyList::empty(py);
    for o in outcomes {
        let d = PyDict::new(py);
        d.set_item("id", o.id)?;
        d.set_item("passed", o.passed)?;
        d.set_item("diffs", o.diffs)?;
        d.set_item("warnings", o.warnings)?;
        list.append(d)?;
    }
    Ok(list)
}

/// Runs a seeded sampling campaign and returns its summary.
#[pyfunction]
#[pyo3(signature = (model = "linear_link", m = 2, n = 2, b = 100.0, count = 1000, seed = 0, egoistic = None, tol = eg::DEFAULT_TOL))]
#[allow(clippy::too_many_arguments)]
fn run_campaign<'py>(
    py: Python<'py>,
    model: &str,
    m: usize,
    n: usize,
    b: f64,
    count: u64,
    seed: u64,
    egoistic: Option<&str>,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = SamplerConfig {
        m,
        n,
        b,
        egoistic: egoistic.map(parse_mode).transpose()?,
        model: parse_model(model)?,
        count,
        seed,
        tol,
    };
    let report = py.detach(|| eg::run_campaign(&cfg)).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("trials", report.trials)?;
    d.set_item("pne_found", report.pne_found)?;
    d.set_item("pne_found_fraction", report.pne_found_fraction)?;
    d.set_item("max_poa_observed", poa_to_f64(report.max_poa_observed))?;
    d.set_item("degenerate_trials", report.degenerate_trials)?;
    d.set_item(
        "no_pne_trials",
        report
            .no_pne_instances
            .iter()
            .map(|x| x.trial_index)
            .collect::<Vec<_>>(),
    )?;
    d.set_item("summary", report.summary_line())?;
    Ok(d)
}

#[pymodule]
fn pyelection(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGameInstance>()?;
    m.add_function(wrap_pyfunction!(win_probability, m)?)?;
    m.add_function(wrap_pyfunction!(payoff_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(paper_case, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    m.add_function(wrap_pyfunction!(run_campaign, m)?)?;
    m.add("CASE_IDS", eg::CASE_IDS.to_vec())?;
    m.add("DEFAULT_TOL", eg::DEFAULT_TOL)?;
    Ok(())
}

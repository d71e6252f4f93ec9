//! Python bindings. Structured results come back as plain dicts and lists.

use dtqw_core::edge::{self, EdgeBranch};
use dtqw_core::lattice::ThetaProfile;
use dtqw_core::{momentum, symmetry, topology, Band, CoinParams, Error, InitialCase, FrameVariant, InterfaceSpec};
use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

fn to_py(e: Error) -> PyErr {
    if e.is_contract_violation() {
        PyRuntimeError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn to_object<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

#[pyclass(name = "CoinParams", module = "dtqw", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyCoinParams(CoinParams);

#[pymethods]
impl PyCoinParams {
    #[new]
    #[pyo3(signature = (theta, delta = 0.0, alpha = 0.0, beta = 0.0))]
    fn new(theta: f64, delta: f64, alpha: f64, beta: f64) -> Self {
        PyCoinParams(CoinParams::new(delta, alpha, beta, theta))
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.0.delta
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.0.beta
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta
    }

    /// Row-major 2×2 coin as nested lists of complex numbers.
    fn coin(&self) -> [[Complex64; 2]; 2] {
        dtqw_core::coin_matrix(&self.0).0
    }

    fn dispersion(&self, k: f64) -> f64 {
        momentum::dispersion(&self.0, k)
    }

    fn bloch_vector(&self, k: f64) -> PyResult<[f64; 3]> {
        momentum::bloch_vector(&self.0, k).map(|v| v.0).map_err(to_py)
    }

    #[pyo3(signature = (grid = momentum::DEFAULT_GRID))]
    fn band_structure(&self, py: Python<'_>, grid: usize) -> PyResult<Py<PyAny>> {
        to_object(py, &momentum::band_structure(&self.0, grid).map_err(to_py)?.points)
    }

    #[pyo3(signature = (grid = momentum::DEFAULT_GRID))]
    fn invariant(&self, py: Python<'_>, grid: usize) -> PyResult<Py<PyAny>> {
        to_object(py, &topology::invariant(&self.0, grid).map_err(to_py)?)
    }

    #[pyo3(signature = (upper = true, grid = momentum::DEFAULT_GRID))]
    fn winding(&self, upper: bool, grid: usize) -> PyResult<i64> {
        let band = if upper { Band::Upper } else { Band::Lower };
        topology::winding_mt(&self.0, band, grid).map_err(to_py)
    }

    /// Winding of the frame-rotated image about its chiral axis.
    #[pyo3(signature = (frame, grid = momentum::DEFAULT_GRID))]
    fn rotated_winding(&self, frame: &str, grid: usize) -> PyResult<i64> {
        let v: FrameVariant = frame.parse().map_err(to_py)?;
        let axis = v.gamma_axis().ok_or_else(|| PyValueError::new_err("frame has no chiral axis"))?;
        topology::rotated_winding(&self.0, v, &axis, grid).map_err(to_py)
    }

    #[pyo3(signature = (ring_size = 16, momenta = vec![0.3, 1.1, -2.0]))]
    fn symmetry_checks(&self, py: Python<'_>, ring_size: usize, momenta: Vec<f64>) -> PyResult<Py<PyAny>> {
        let profile = ThetaProfile::homogeneous(self.0.theta, ring_size).map_err(to_py)?;
        let reports = symmetry::run_symmetry_checks(&self.0, &profile, ring_size, &momenta).map_err(to_py)?;
        to_object(py, &reports)
    }

    fn __repr__(&self) -> String {
        let p = self.0;
        format!("CoinParams(theta={}, delta={}, alpha={}, beta={})", p.theta, p.delta, p.alpha, p.beta)
    }
}

#[pyfunction]
fn rel_homotopic(a: PyCoinParams, b: PyCoinParams) -> PyResult<bool> {
    topology::rel_homotopic(&a.0, &b.0).map_err(to_py)
}

#[pyfunction]
fn predicted_edge_states(a: PyCoinParams, b: PyCoinParams) -> PyResult<usize> {
    topology::predicted_edge_states(&a.0, &b.0).map_err(to_py)
}

fn interface(delta: f64, alpha: f64, beta: f64, theta1: f64, theta2: f64, ring_size: usize) -> PyResult<InterfaceSpec> {
    InterfaceSpec::new(delta, alpha, beta, theta1, theta2, ring_size).map_err(to_py)
}

/// Analytic edge state at the sharp interface, with its eigen-residual on the ring.
#[pyfunction]
#[pyo3(signature = (theta1, theta2, eta = 0.0, ring_size = 64, delta = 0.0, alpha = 0.0, beta = 0.0))]
#[allow(clippy::too_many_arguments)]
fn edge_state(
    py: Python<'_>,
    theta1: f64,
    theta2: f64,
    eta: f64,
    ring_size: usize,
    delta: f64,
    alpha: f64,
    beta: f64,
) -> PyResult<Py<PyAny>> {
    let spec = interface(delta, alpha, beta, theta1, theta2, ring_size)?;
    let e = edge::analytic_edge_state(&spec, EdgeBranch::from_eta(eta).map_err(to_py)?.eta()).map_err(to_py)?;
    let residual = edge::eigen_residual(&spec.walk().map_err(to_py)?, &e).map_err(to_py)?;
    let amplitudes: Vec<(f64, f64, f64, f64)> =
        e.state.amplitudes().iter().map(|s| (s.right.re, s.right.im, s.left.re, s.left.im)).collect();
    let out = serde_json::json!({
        "eta": e.eta,
        "quasienergy": residual.quasienergy,
        "residual": residual.residual,
        "norm_constant": e.norm_constant,
        "amplitudes": amplitudes,
    });
    to_object(py, &out)
}

/// Interface dynamics for one of "orthogonal-to-both", "overlap-one", "overlap-both".
#[pyfunction]
#[pyo3(signature = (case, steps = 200, theta1 = -std::f64::consts::FRAC_PI_4, theta2 = std::f64::consts::FRAC_PI_4, ring_size = None, delta = 0.0, alpha = 0.0))]
#[allow(clippy::too_many_arguments)]
fn interface_experiment(
    py: Python<'_>,
    case: &str,
    steps: usize,
    theta1: f64,
    theta2: f64,
    ring_size: Option<usize>,
    delta: f64,
    alpha: f64,
) -> PyResult<Py<PyAny>> {
    let case: InitialCase = case.parse().map_err(to_py)?;
    let n = ring_size.unwrap_or_else(|| edge::default_ring_for_steps(steps));
    let spec = interface(delta, alpha, std::f64::consts::FRAC_PI_2, theta1, theta2, n)?;
    let exp = edge::interface_experiment(&spec, case, steps).map_err(to_py)?;
    let out = serde_json::json!({ "record": exp.record, "observables": exp.observables });
    to_object(py, &out)
}

/// Eigenphases near δ and δ+π on a ring with two domain walls.
#[pyfunction]
#[pyo3(signature = (theta1, theta2, ring_size = 64, delta = 0.0, alpha = 0.0, beta = 0.0))]
fn count_gap_states(
    py: Python<'_>,
    theta1: f64,
    theta2: f64,
    ring_size: usize,
    delta: f64,
    alpha: f64,
    beta: f64,
) -> PyResult<Py<PyAny>> {
    let p = CoinParams::new(delta, alpha, beta, theta1);
    to_object(py, &edge::count_gap_states(&p, theta1, theta2, ring_size).map_err(to_py)?)
}

#[pymodule]
fn dtqw(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoinParams>()?;
    m.add_function(wrap_pyfunction!(rel_homotopic, m)?)?;
    m.add_function(wrap_pyfunction!(predicted_edge_states, m)?)?;
    m.add_function(wrap_pyfunction!(edge_state, m)?)?;
    m.add_function(wrap_pyfunction!(interface_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(count_gap_states, m)?)?;
    Ok(())
}

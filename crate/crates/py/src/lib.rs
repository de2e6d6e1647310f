//! Python bindings for `rwa_core`.

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use rwa_core::bounds;
use rwa_core::harness::verify_ibp;
use rwa_core::model::moments;
use rwa_core::propagate::{self, PropagationCertificate};
use rwa_core::{ModelParams, RwaError, Spin, SpinBosonState};

create_exception!(rwa_py, NoConvergenceError, PyRuntimeError);

fn to_py(e: RwaError) -> PyErr {
    let msg = format!("{}: {e}", e.kind());
    if e.exit_code() == 3 {
        NoConvergenceError::new_err(msg)
    } else {
        PyValueError::new_err(msg)
    }
}

fn spin(j: u8) -> PyResult<Spin> {
    Spin::from_index(j).map_err(to_py)
}

/// Model parameters `(ω, λ, Ω)`.
#[pyclass(name = "Params", frozen)]
struct PyParams(ModelParams);

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (omega, lambda_, big_omega=None))]
    fn new(omega: f64, lambda_: f64, big_omega: Option<f64>) -> PyResult<Self> {
        ModelParams::new(omega, lambda_, big_omega.unwrap_or(omega))
            .map(Self)
            .map_err(to_py)
    }

    /// `ω = 1`, `λ = g`, `Ω = 1 + δ`.
    #[staticmethod]
    #[pyo3(signature = (g, delta=0.0))]
    fn from_ratio(g: f64, delta: f64) -> PyResult<Self> {
        ModelParams::from_ratio(g, delta).map(Self).map_err(to_py)
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.0.omega()
    }

    #[getter]
    fn lambda_(&self) -> f64 {
        self.0.lambda()
    }

    #[getter]
    fn big_omega(&self) -> f64 {
        self.0.big_omega()
    }

    #[getter]
    fn delta(&self) -> f64 {
        self.0.delta()
    }

    #[getter]
    fn g(&self) -> f64 {
        self.0.g()
    }

    fn __repr__(&self) -> String {
        format!(
            "Params(omega={}, lambda_={}, big_omega={})",
            self.0.omega(),
            self.0.lambda(),
            self.0.big_omega()
        )
    }
}

/// Spin-boson state truncated at a Fock cutoff. Spin labels are 1 (up) and 2.
#[pyclass(name = "State", frozen)]
struct PyState(SpinBosonState);

#[pymethods]
impl PyState {
    #[staticmethod]
    #[pyo3(signature = (n, spin=1, cutoff=None))]
    fn fock(n: usize, spin: u8, cutoff: Option<usize>) -> PyResult<Self> {
        SpinBosonState::fock(self::spin(spin)?, n, cutoff.unwrap_or(n))
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (alpha, spin=1, cutoff=64, mass_tol=1e-12))]
    fn coherent(alpha: Complex64, spin: u8, cutoff: usize, mass_tol: f64) -> PyResult<Self> {
        SpinBosonState::coherent(self::spin(spin)?, alpha, cutoff, mass_tol)
            .map(Self)
            .map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (alpha, spin=1, cutoff=64, mass_tol=1e-12))]
    fn cat(alpha: Complex64, spin: u8, cutoff: usize, mass_tol: f64) -> PyResult<Self> {
        SpinBosonState::cat(self::spin(spin)?, alpha, cutoff, mass_tol)
            .map(Self)
            .map_err(to_py)
    }

    /// Build from the two spin branches; both lists must have the same length.
    #[staticmethod]
    fn from_branches(up: Vec<Complex64>, down: Vec<Complex64>) -> PyResult<Self> {
        SpinBosonState::from_branches(up, down).map(Self).map_err(to_py)
    }

    #[getter]
    fn cutoff(&self) -> usize {
        self.0.cutoff()
    }

    fn up(&self) -> Vec<Complex64> {
        self.0.up().to_vec()
    }

    fn down(&self) -> Vec<Complex64> {
        self.0.down().to_vec()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Distance to another state, padding the shorter one with zeros.
    fn distance(&self, other: &PyState) -> f64 {
        let c = self.0.cutoff().max(other.0.cutoff());
        self.0.padded_to(c).distance(&other.0.padded_to(c))
    }

    /// `(m_np2, m_prod, m_nm1)`
    fn moments(&self) -> (f64, f64, f64) {
        let m = moments(&self.0);
        (m.m_np2, m.m_prod, m.m_nm1)
    }

    fn __repr__(&self) -> String {
        format!("State(cutoff={}, norm={})", self.0.cutoff(), self.0.norm())
    }
}

fn certificate<'py>(py: Python<'py>, c: &PropagationCertificate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("cutoff_used", c.cutoff_used)?;
    d.set_item("truncation_cutoff", c.truncation_cutoff)?;
    d.set_item("solver_residual", c.solver_residual)?;
    d.set_item("truncation_delta", c.truncation_delta)?;
    d.set_item("total_error_estimate", c.total_error_estimate)?;
    d.set_item("substeps", c.substeps)?;
    Ok(d)
}

/// Exact Jaynes-Cummings evolution `e^{−itH_RWA}Ψ`.
#[pyfunction]
fn jc_propagate(params: &PyParams, state: &PyState, t: f64) -> PyState {
    PyState(propagate::jc_propagate(&params.0, &state.0, t))
}

/// `e^{−itH}Ψ` with its error certificate.
#[pyfunction]
#[pyo3(signature = (params, state, t, tol=1e-10))]
fn rabi_propagate<'py>(
    py: Python<'py>,
    params: &PyParams,
    state: &PyState,
    t: f64,
    tol: f64,
) -> PyResult<(PyState, Bound<'py, PyDict>)> {
    let (out, cert) = py
        .detach(|| propagate::rabi_propagate(&params.0, &state.0, t, tol))
        .map_err(to_py)?;
    Ok((PyState(out), certificate(py, &cert)?))
}

/// `(‖e^{−itH}Ψ − e^{−itH_RWA}Ψ‖, error estimate)`
#[pyfunction]
#[pyo3(signature = (params, state, t, tol=1e-10))]
fn norm_difference(py: Python<'_>, params: &PyParams, state: &PyState, t: f64, tol: f64) -> PyResult<(f64, f64)> {
    py.detach(|| propagate::norm_difference(&params.0, &state.0, t, tol))
        .map(|(v, c)| (v, c.total_error_estimate))
        .map_err(to_py)
}

/// Worst error over `[0, t_max]`.
#[pyfunction]
#[pyo3(signature = (params, state, t_max, grid=128, refine_depth=30, tol=1e-10))]
fn sup_norm_difference<'py>(
    py: Python<'py>,
    params: &PyParams,
    state: &PyState,
    t_max: f64,
    grid: usize,
    refine_depth: usize,
    tol: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = py
        .detach(|| propagate::sup_norm_difference(&params.0, &state.0, t_max, grid, refine_depth, tol))
        .map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("t_opt", r.t_opt)?;
    d.set_item("value", r.value)?;
    d.set_item("grid_points", r.grid_points)?;
    d.set_item("refinement_depth", r.refinement_depth)?;
    d.set_item("error_estimate", r.error_estimate)?;
    Ok(d)
}

#[pyfunction]
fn upper_bound(params: &PyParams, state: &PyState, t: f64) -> f64 {
    bounds::upper_bound(&params.0, &moments(&state.0), t).raw
}

/// `(raw, clamped, valid_domain)`
#[pyfunction]
fn lower_bound(params: &PyParams, state: &PyState, t: f64) -> (f64, f64, bool) {
    let b = bounds::lower_bound(&params.0, &moments(&state.0), t);
    (b.raw, b.clamped, b.valid_domain)
}

#[pyfunction]
fn fock_upper(g: f64, n: u64, omega_t: f64) -> f64 {
    bounds::fock_upper(g, n, omega_t)
}

#[pyfunction]
fn fock_lower(g: f64, n: u64, omega_t: f64) -> PyResult<f64> {
    bounds::fock_lower(g, n, omega_t).map_err(to_py)
}

#[pyfunction]
fn t_star(g: f64, n: u64) -> PyResult<f64> {
    bounds::t_star(g, n).map_err(to_py)
}

#[pyfunction]
fn lower_at_tstar(g: f64, n: u64) -> PyResult<f64> {
    bounds::lower_at_tstar(g, n).map_err(to_py)
}

/// `(lower, upper, informative)`
#[pyfunction]
fn eps_window(g: f64, n: u64) -> PyResult<(f64, f64, bool)> {
    bounds::eps_window(g, n)
        .map(|w| (w.lower, w.upper, w.informative))
        .map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, eps_budget, omega_t_max=std::f64::consts::PI))]
fn min_g_for_error(n: u64, eps_budget: f64, omega_t_max: f64) -> PyResult<f64> {
    bounds::min_g_for_error(n, eps_budget, omega_t_max).map_err(to_py)
}

/// Residual of the integration-by-parts identity.
#[pyfunction(name = "verify_ibp")]
#[pyo3(signature = (params, state, t, quad_tol=1e-8))]
fn py_verify_ibp(py: Python<'_>, params: &PyParams, state: &PyState, t: f64, quad_tol: f64) -> PyResult<f64> {
    py.detach(|| verify_ibp(&params.0, &state.0, t, quad_tol)).map_err(to_py)
}

#[pymodule]
fn rwa_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyState>()?;
    m.add("NoConvergenceError", m.py().get_type::<NoConvergenceError>())?;
    m.add_function(wrap_pyfunction!(jc_propagate, m)?)?;
    m.add_function(wrap_pyfunction!(rabi_propagate, m)?)?;
    m.add_function(wrap_pyfunction!(norm_difference, m)?)?;
    m.add_function(wrap_pyfunction!(sup_norm_difference, m)?)?;
    m.add_function(wrap_pyfunction!(upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(fock_upper, m)?)?;
    m.add_function(wrap_pyfunction!(fock_lower, m)?)?;
    m.add_function(wrap_pyfunction!(t_star, m)?)?;
    m.add_function(wrap_pyfunction!(lower_at_tstar, m)?)?;
    m.add_function(wrap_pyfunction!(eps_window, m)?)?;
    m.add_function(wrap_pyfunction!(min_g_for_error, m)?)?;
    m.add_function(wrap_pyfunction!(py_verify_ibp, m)?)?;
    Ok(())
}

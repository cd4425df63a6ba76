//! Python bindings: grids, wave functions, kernel densities and currents,
//! free evolution, covariance and Dirac checks, and figure tables.

// pyo3 0.22 macro expansion trips this lint on every PyResult signature
#![allow(clippy::useless_conversion)]

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use salpeter_core::covariance::{self, constraint_report, default_events};
use salpeter_core::{dirac, figures, kernels, salpeter as ops, states};

fn to_py(e: salpeter_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_kernel(name: &str) -> PyResult<salpeter_core::KernelKind> {
    name.parse().map_err(to_py)
}

#[pyclass(name = "Grid", frozen)]
#[derive(Clone, Copy)]
struct PyGrid(salpeter_core::Grid1D);

#[pymethods]
impl PyGrid {
    #[new]
    fn new(x_min: f64, x_max: f64, n_points: usize) -> PyResult<Self> {
        salpeter_core::Grid1D::new(x_min, x_max, n_points).map(Self).map_err(to_py)
    }

    /// Grid of `pad_factor` box widths centred on the box `[0, width]`.
    #[staticmethod]
    fn around_box(width: f64, pad_factor: f64, n_points: usize) -> PyResult<Self> {
        salpeter_core::Grid1D::around_box(width, pad_factor, n_points).map(Self).map_err(to_py)
    }

    #[getter]
    fn n_points(&self) -> usize {
        self.0.n_points()
    }

    #[getter]
    fn dx(&self) -> f64 {
        self.0.dx()
    }

    #[getter]
    fn dp(&self) -> f64 {
        self.0.dp()
    }

    fn positions(&self) -> Vec<f64> {
        self.0.positions()
    }

    fn momenta(&self) -> Vec<f64> {
        self.0.momenta()
    }

    fn __repr__(&self) -> String {
        format!("Grid({}, {}, {})", self.0.x_min(), self.0.x_max(), self.0.n_points())
    }
}

#[pyclass(name = "WaveFunction")]
#[derive(Clone)]
struct PyWaveFunction(salpeter_core::WaveFunction);

#[pymethods]
impl PyWaveFunction {
    #[new]
    fn new(grid: PyGrid, values: Vec<Complex64>) -> PyResult<Self> {
        salpeter_core::WaveFunction::new(grid.0, values).map(Self).map_err(to_py)
    }

    #[getter]
    fn grid(&self) -> PyGrid {
        PyGrid(*self.0.grid())
    }

    fn values(&self) -> Vec<Complex64> {
        self.0.values().to_vec()
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn momentum_values(&self) -> Vec<Complex64> {
        self.0.to_momentum().values().to_vec()
    }

    fn evolve(&self, t: f64) -> Self {
        Self(ops::evolve_free(&self.0, t))
    }

    fn hamiltonian(&self) -> Self {
        Self(ops::apply_hamiltonian(&self.0))
    }

    /// Truncated derivative series; raises when the spectrum reaches `|p| >= 1`.
    fn hamiltonian_series(&self, k_max: usize) -> PyResult<Self> {
        ops::apply_hamiltonian_series(&self.0, ops::SeriesTruncation::new(k_max)).map(Self).map_err(to_py)
    }

    /// Kernel density on the grid; `kernel` is born, scalar, spinhalf or literal:<n>.
    #[pyo3(signature = (kernel, generic = false))]
    fn density(&self, kernel: &str, generic: bool) -> PyResult<Vec<f64>> {
        let kind = parse_kernel(kernel)?;
        let rho = if generic { kernels::density_generic(&self.0, kind) } else { kernels::density(&self.0, kind) };
        rho.map(|r| r.into_values()).map_err(to_py)
    }

    #[pyo3(signature = (kernel, generic = false))]
    fn current(&self, kernel: &str, generic: bool) -> PyResult<Vec<f64>> {
        let kind = parse_kernel(kernel)?;
        let j = if generic { kernels::current_generic(&self.0, kind) } else { kernels::current(&self.0, kind) };
        j.map(|r| r.into_values()).map_err(to_py)
    }

    fn continuity_residual(&self, kernel: &str, dt: f64) -> PyResult<f64> {
        kernels::continuity_residual(&self.0, parse_kernel(kernel)?, dt).map_err(to_py)
    }

    /// `(current_residual, evolution_residual)` of the Dirac lift at time `t`.
    fn dirac_residuals(&self, t: f64) -> PyResult<(f64, f64)> {
        let r = dirac::equivalence_residuals(&self.0, t).map_err(to_py)?;
        Ok((r.current_residual, r.evolution_residual))
    }

    fn __repr__(&self) -> String {
        format!("WaveFunction(n_points={}, norm={})", self.0.grid().n_points(), self.0.norm())
    }
}

#[pyfunction]
fn box_state(width: f64, n: u32, grid: PyGrid) -> PyResult<PyWaveFunction> {
    states::box_state(width, n, grid.0).map(PyWaveFunction).map_err(to_py)
}

#[pyfunction]
fn superposed_box_state(width: f64, grid: PyGrid) -> PyResult<PyWaveFunction> {
    states::superposed_box_state(width, grid.0).map(PyWaveFunction).map_err(to_py)
}

#[pyfunction]
fn gaussian_state(x0: f64, p0: f64, sigma_p: f64, grid: PyGrid) -> PyResult<PyWaveFunction> {
    states::gaussian_state(x0, p0, sigma_p, grid.0).map(PyWaveFunction).map_err(to_py)
}

/// Samples `Σ A_k exp(i p_k x)` on `grid` for `terms = [(A_k, p_k), ...]`.
#[pyfunction]
fn plane_waves(terms: Vec<(Complex64, f64)>, grid: PyGrid) -> PyResult<PyWaveFunction> {
    let s = salpeter_core::PlaneWaveSuperposition::from_pairs(&terms).map_err(to_py)?;
    Ok(PyWaveFunction(s.on_grid(grid.0, 0.0)))
}

#[pyfunction]
fn kernel_value(kernel: &str, p1: f64, p2: f64) -> PyResult<f64> {
    kernels::kernel_value(parse_kernel(kernel)?, p1, p2).map_err(to_py)
}

/// Residual of the four-vector constraint for momenta `p_i`, `p_j` under a
/// boost with velocity `v`.
#[pyfunction]
fn constraint_residual(kernel: &str, p_i: f64, p_j: f64, v: f64) -> PyResult<f64> {
    let b = salpeter_core::Boost::new(v).map_err(to_py)?;
    constraint_report(parse_kernel(kernel)?, p_i, p_j, b).map(|r| r.residual).map_err(to_py)
}

/// Four-vector covariance residual of the current of `Σ A_k exp(i(p_k x − E_k t))`
/// on the default 3×3 event lattice.
#[pyfunction]
fn covariance_residual(kernel: &str, terms: Vec<(Complex64, f64)>, v: f64) -> PyResult<f64> {
    let s = salpeter_core::PlaneWaveSuperposition::from_pairs(&terms).map_err(to_py)?;
    let b = salpeter_core::Boost::new(v).map_err(to_py)?;
    covariance::covariance_residual(&s, parse_kernel(kernel)?, b, &default_events()).map_err(to_py)
}

fn table_dict<'py>(py: Python<'py>, t: &figures::FigureTable) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let d = pyo3::types::PyDict::new_bound(py);
    d.set_item("x", t.x.clone())?;
    for (name, values) in &t.columns {
        d.set_item(name, values.clone())?;
    }
    Ok(d)
}

fn parse_normalization(s: &str) -> PyResult<figures::Normalization> {
    s.parse().map_err(PyValueError::new_err)
}

/// Columns `x, rho_born, rho_scalar` over `[−0.5L, 1.5L]`.
#[pyfunction]
#[pyo3(signature = (box_width, n = 2, grid_points = 4096, pad_factor = 4.0, normalization = "raw"))]
fn figure1<'py>(
    py: Python<'py>,
    box_width: f64,
    n: u32,
    grid_points: usize,
    pad_factor: f64,
    normalization: &str,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let t = figures::figure1(box_width, n, grid_points, pad_factor).map_err(to_py)?;
    table_dict(py, &t.normalized(parse_normalization(normalization)?))
}

/// Columns `x, rho_born, rho_scalar, rho_half` for the two-level box state.
#[pyfunction]
#[pyo3(signature = (box_width = 0.5, grid_points = 4096, pad_factor = 4.0, normalization = "raw"))]
fn figure2<'py>(
    py: Python<'py>,
    box_width: f64,
    grid_points: usize,
    pad_factor: f64,
    normalization: &str,
) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
    let t = figures::figure2(box_width, grid_points, pad_factor).map_err(to_py)?;
    table_dict(py, &t.normalized(parse_normalization(normalization)?))
}

#[pymodule]
pub fn salpeter(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGrid>()?;
    m.add_class::<PyWaveFunction>()?;
    m.add_function(wrap_pyfunction!(box_state, m)?)?;
    m.add_function(wrap_pyfunction!(superposed_box_state, m)?)?;
    m.add_function(wrap_pyfunction!(gaussian_state, m)?)?;
    m.add_function(wrap_pyfunction!(plane_waves, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_value, m)?)?;
    m.add_function(wrap_pyfunction!(constraint_residual, m)?)?;
    m.add_function(wrap_pyfunction!(covariance_residual, m)?)?;
    m.add_function(wrap_pyfunction!(figure1, m)?)?;
    m.add_function(wrap_pyfunction!(figure2, m)?)?;
    Ok(())
}

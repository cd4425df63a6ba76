//! Wave-function constructors: infinite-well shapes, Gaussian packets and
//! exact plane-wave superpositions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid1D, WaveFunction};
use crate::salpeter::energy;

/// Minimum ratio of grid width to box width for embedded box states.
pub const MIN_PAD_FACTOR: f64 = 4.0;

/// Momenta closer than this (in units of mc) are considered equal.
pub const MOMENTUM_DISTINCTNESS: f64 = 1e-12;

/// Gaussian tails must fall below this fraction of the peak amplitude at the
/// grid boundaries and at the Nyquist momentum.
pub const GAUSSIAN_TAIL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub amplitude: Complex64,
    pub momentum: f64,
}

impl PlaneWave {
    pub fn new(amplitude: Complex64, momentum: f64) -> Self {
        Self { amplitude, momentum }
    }

    pub fn energy(&self) -> f64 {
        energy(self.momentum)
    }
}

/// A finite sum of on-shell plane waves `Σ A_i exp(i(p_i x − E(p_i) t))`.
///
/// Time dependence is always fixed by the relativistic dispersion relation,
/// so a superposition is an exact solution of the free square-root
/// Klein-Gordon equation.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveSuperposition {
    terms: Vec<PlaneWave>,
}

impl PlaneWaveSuperposition {
    pub fn new(terms: Vec<PlaneWave>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptySuperposition);
        }
        for t in &terms {
            if !t.momentum.is_finite() {
                return Err(Error::NonFinite { what: "momentum", value: t.momentum });
            }
            if !(t.amplitude.re.is_finite() && t.amplitude.im.is_finite()) {
                return Err(Error::NonFinite { what: "amplitude", value: t.amplitude.norm() });
            }
        }
        for (i, a) in terms.iter().enumerate() {
            for b in &terms[i + 1..] {
                if (a.momentum - b.momentum).abs() <= MOMENTUM_DISTINCTNESS {
                    return Err(Error::CoincidentMomenta(a.momentum, b.momentum));
                }
            }
        }
        Ok(Self { terms })
    }

    pub fn from_pairs(pairs: &[(Complex64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(a, p)| PlaneWave::new(a, p)).collect())
    }

    pub fn terms(&self) -> &[PlaneWave] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same momenta with every amplitude replaced by `f(i, A_i)`.
    pub fn map_amplitudes(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        let terms = self.terms.iter().enumerate().map(|(i, t)| PlaneWave::new(f(i, t.amplitude), t.momentum)).collect();
        Self { terms }
    }

    pub(crate) fn with_terms_unchecked(terms: Vec<PlaneWave>) -> Self {
        Self { terms }
    }

    pub fn sample(&self, t: f64, x: f64) -> Complex64 {
        sample_superposition(self, t, x)
    }

    /// Samples the superposition at time `t` on every grid point.
    pub fn on_grid(&self, grid: Grid1D, t: f64) -> WaveFunction {
        WaveFunction::from_fn(grid, |x| self.sample(t, x))
    }
}

pub fn sample_superposition(s: &PlaneWaveSuperposition, t: f64, x: f64) -> Complex64 {
    s.terms.iter().map(|w| w.amplitude * Complex64::from_polar(1.0, w.momentum * x - w.energy() * t)).sum()
}

fn check_box(width: f64, grid: &Grid1D) -> Result<()> {
    if !(width > 0.0 && width.is_finite()) {
        return Err(Error::InvalidBoxWidth(width));
    }
    if !(grid.x_min() < 0.0 && grid.x_max() > width) {
        return Err(Error::BoxOutsideGrid { width, x_min: grid.x_min(), x_max: grid.x_max() });
    }
    let pad = grid.width() / width;
    if pad < MIN_PAD_FACTOR * (1.0 - 1e-12) {
        return Err(Error::InsufficientPadding { required: MIN_PAD_FACTOR, actual: pad });
    }
    Ok(())
}

fn normalized_box_shape(width: f64, grid: Grid1D, shape: impl Fn(f64) -> f64) -> Result<WaveFunction> {
    check_box(width, &grid)?;
    let psi = WaveFunction::from_fn(grid, |x| {
        if (0.0..=width).contains(&x) {
            Complex64::new(shape(x), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let norm = psi.norm();
    if norm == 0.0 {
        return Err(Error::ZeroState);
    }
    Ok(psi.scaled(Complex64::new(1.0 / norm, 0.0)))
}

/// Infinite-well eigenfunction shape `√(2/L)·sin(nπx/L)` on `[0, L]`, zero
/// outside, renormalized on the grid.
pub fn box_state(width: f64, n: u32, grid: Grid1D) -> Result<WaveFunction> {
    if n == 0 {
        return Err(Error::InvalidQuantumNumber(n));
    }
    let k = n as f64 * std::f64::consts::PI / width;
    let amp = (2.0 / width).sqrt();
    normalized_box_shape(width, grid, |x| amp * (k * x).sin())
}

/// `N·(sin(πx/L) + sin(2πx/L))` on `[0, L]`.
pub fn superposed_box_state(width: f64, grid: Grid1D) -> Result<WaveFunction> {
    let k = std::f64::consts::PI / width;
    let amp = 1.0 / width.sqrt();
    normalized_box_shape(width, grid, |x| amp * ((k * x).sin() + (2.0 * k * x).sin()))
}

/// Normalized Gaussian packet centred at `x0` with mean momentum `p0` and
/// momentum standard deviation `sigma_p`.
pub fn gaussian_state(x0: f64, p0: f64, sigma_p: f64, grid: Grid1D) -> Result<WaveFunction> {
    if !(sigma_p > 0.0 && sigma_p.is_finite()) {
        return Err(Error::InvalidMomentumSpread(sigma_p));
    }
    for (what, value) in [("x0", x0), ("p0", p0)] {
        if !value.is_finite() {
            return Err(Error::NonFinite { what, value });
        }
    }
    // |ψ| ∝ exp(-σ_p²(x-x0)²), |φ| ∝ exp(-(p-p0)²/(4σ_p²))
    let x_gap = (x0 - grid.x_min()).min(grid.x_max() - x0);
    let x_tail = if x_gap > 0.0 { (-(sigma_p * x_gap).powi(2)).exp() } else { 1.0 };
    if x_tail >= GAUSSIAN_TAIL {
        return Err(Error::PacketLeak { boundary: "grid boundary", tail: x_tail });
    }
    let p_gap = grid.p_max() - p0.abs();
    let p_tail = if p_gap > 0.0 { (-(p_gap / (2.0 * sigma_p)).powi(2)).exp() } else { 1.0 };
    if p_tail >= GAUSSIAN_TAIL {
        return Err(Error::PacketLeak { boundary: "Nyquist momentum", tail: p_tail });
    }
    let psi = WaveFunction::from_fn(grid, |x| {
        let d = x - x0;
        Complex64::from_polar((-(sigma_p * d).powi(2)).exp(), p0 * x)
    });
    let norm = psi.norm();
    Ok(psi.scaled(Complex64::new(1.0 / norm, 0.0)))
}

//! Uniform 1-D grids, the position/momentum transform pair and spectral
//! multipliers.
//!
//! All quantities are in natural units (ħ = c = m = 1): lengths in Compton
//! wavelengths, momenta in units of mc.
//!
//! Transform convention:
//!
//! ```text
//! φ(p) = (2π)^{-1/2} ∫ ψ(x) e^{-ipx} dx        (discretized with dx weights)
//! ψ(x) = (2π)^{-1/2} ∫ φ(p) e^{+ipx} dp        (discretized with dp weights)
//! ```
//!
//! Momentum samples are stored in centered order, `p_k = k·dp` for
//! `k = -n/2, …, n/2 - 1`. The Nyquist bin is the single point `-p_max`.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn forward_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(n))
}

fn inverse_plan(n: usize) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(n))
}

/// Unnormalized in-place inverse DFT, `out_j = Σ_r in_r e^{+2πi rj/n}`.
pub(crate) fn inverse_dft_in_place(buf: &mut [Complex64]) {
    inverse_plan(buf.len()).process(buf);
}

/// Uniform periodic sampling of `[x_min, x_max)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !x_min.is_finite() {
            return Err(Error::NonFinite { what: "x_min", value: x_min });
        }
        if !x_max.is_finite() {
            return Err(Error::NonFinite { what: "x_max", value: x_max });
        }
        if x_max <= x_min {
            return Err(Error::DegenerateInterval { x_min, x_max });
        }
        if n_points < 4 || !n_points.is_power_of_two() {
            return Err(Error::InvalidPointCount(n_points));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    /// Grid of `n_points` centred on the box `[0, width]`, spanning
    /// `pad_factor` box widths.
    pub fn around_box(width: f64, pad_factor: f64, n_points: usize) -> Result<Self> {
        if !(width > 0.0 && width.is_finite()) {
            return Err(Error::InvalidBoxWidth(width));
        }
        if !(pad_factor.is_finite() && pad_factor >= crate::states::MIN_PAD_FACTOR) {
            return Err(Error::InsufficientPadding { required: crate::states::MIN_PAD_FACTOR, actual: pad_factor });
        }
        let half = 0.5 * pad_factor * width;
        Self::new(0.5 * width - half, 0.5 * width + half, n_points)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.width() / self.n_points as f64
    }

    /// Momentum lattice spacing `2π/(n·dx)`.
    pub fn dp(&self) -> f64 {
        2.0 * PI / self.width()
    }

    /// Nyquist momentum `π/dx`.
    pub fn p_max(&self) -> f64 {
        PI / self.dx()
    }

    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx()
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.x(j)).collect()
    }

    /// Signed lattice index of centered slot `i`.
    pub fn momentum_index(&self, i: usize) -> i64 {
        i as i64 - (self.n_points / 2) as i64
    }

    /// Momentum of centered slot `i`.
    pub fn momentum(&self, i: usize) -> f64 {
        self.momentum_index(i) as f64 * self.dp()
    }

    pub fn momenta(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.momentum(i)).collect()
    }

    /// Centered slot holding lattice momentum `k·dp`, if representable.
    pub fn slot_of_index(&self, k: i64) -> Option<usize> {
        let half = (self.n_points / 2) as i64;
        (-half..half).contains(&k).then(|| (k + half) as usize)
    }

    fn fft_slot(&self, i: usize) -> usize {
        self.momentum_index(i).rem_euclid(self.n_points as i64) as usize
    }
}

/// Complex field sampled on a grid in the position representation.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveFunction {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl WaveFunction {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::LengthMismatch { expected: grid.n_points(), actual: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, values: vec![Complex64::new(0.0, 0.0); grid.n_points()] }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        let values = (0..grid.n_points()).map(|j| f(grid.x(j))).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// `Σ |ψ_j|² dx`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dx()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `⟨self, other⟩ = Σ conj(self_j)·other_j dx`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_grid(other)?;
        let s: Complex64 = self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum();
        Ok(s * self.grid.dx())
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self { grid: self.grid, values: self.values.iter().map(|v| v * factor).collect() }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Result<Self> {
        self.check_same_grid(other)?;
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        Ok(Self { grid: self.grid, values })
    }

    /// Largest pointwise modulus of `self - other`.
    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn to_momentum(&self) -> MomentumSpectrum {
        let g = self.grid;
        let n = g.n_points();
        let mut buf = self.values.clone();
        forward_plan(n).process(&mut buf);
        let scale = g.dx() / (2.0 * PI).sqrt();
        let values = (0..n)
            .map(|i| {
                let p = g.momentum(i);
                buf[g.fft_slot(i)] * Complex64::from_polar(scale, -p * g.x_min())
            })
            .collect();
        MomentumSpectrum { grid: g, values }
    }

    /// Applies the spectral multiplier `symbol(p̂)` without finiteness checks.
    pub(crate) fn map_spectrum(&self, symbol: impl Fn(f64) -> Complex64) -> Self {
        self.to_momentum().map(symbol).to_position()
    }

    pub(crate) fn map_real_spectrum(&self, symbol: impl Fn(f64) -> f64) -> Self {
        self.map_spectrum(|p| Complex64::new(symbol(p), 0.0))
    }

    /// Spectral derivative `∂ₓψ`.
    pub fn derivative(&self) -> Self {
        self.map_spectrum(|p| Complex64::new(0.0, p))
    }

    fn check_same_grid(&self, other: &Self) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// Complex field on the centered momentum lattice of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumSpectrum {
    grid: Grid1D,
    values: Vec<Complex64>,
}

impl MomentumSpectrum {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::LengthMismatch { expected: grid.n_points(), actual: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// `Σ |φ_k|² dp`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dp()
    }

    pub fn to_position(&self) -> WaveFunction {
        let g = self.grid;
        let n = g.n_points();
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        for (i, v) in self.values.iter().enumerate() {
            let p = g.momentum(i);
            buf[g.fft_slot(i)] = v * Complex64::from_polar(1.0, p * g.x_min());
        }
        inverse_plan(n).process(&mut buf);
        let scale = g.dp() / (2.0 * PI).sqrt();
        for v in &mut buf {
            *v *= scale;
        }
        WaveFunction { grid: g, values: buf }
    }

    /// Multiplies every lattice value by `symbol(p_k)`, rejecting symbols
    /// that are not finite somewhere on the lattice.
    pub fn spectral_multiplier(&self, symbol: impl Fn(f64) -> Complex64) -> Result<Self> {
        let factors: Vec<Complex64> = (0..self.values.len())
            .map(|i| {
                let p = self.grid.momentum(i);
                let s = symbol(p);
                if s.re.is_finite() && s.im.is_finite() {
                    Ok(s)
                } else {
                    Err(Error::NonFiniteSymbol { momentum: p })
                }
            })
            .collect::<Result<_>>()?;
        let values = self.values.iter().zip(factors).map(|(v, s)| v * s).collect();
        Ok(Self { grid: self.grid, values })
    }

    pub(crate) fn map(&self, symbol: impl Fn(f64) -> Complex64) -> Self {
        let values = self.values.iter().enumerate().map(|(i, v)| v * symbol(self.grid.momentum(i))).collect();
        Self { grid: self.grid, values }
    }
}

/// Real field sampled on a grid (densities and currents).
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    grid: Grid1D,
    values: Vec<f64>,
}

pub type DensityField = RealField;
pub type CurrentField = RealField;

impl RealField {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::LengthMismatch { expected: grid.n_points(), actual: values.len() });
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// `Σ f_j dx`.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.dx()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }
}

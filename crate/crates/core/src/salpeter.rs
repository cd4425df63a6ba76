//! The square-root Klein-Gordon Hamiltonian `Ĥ = √(p̂² + 1)` and the
//! pseudo-differential D-operators derived from it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::WaveFunction;

/// Spectral mass allowed at `|p| >= 1` before the derivative series is
/// declared divergent.
pub const SERIES_DIVERGENCE_FRACTION: f64 = 1e-12;

/// Relativistic energy `E(p) = √(p² + 1)`.
pub fn energy(p: f64) -> f64 {
    p.hypot(1.0)
}

/// `√((E + 1)/2)`.
pub fn d_plus(p: f64) -> f64 {
    (0.5 * (energy(p) + 1.0)).sqrt()
}

/// `sign(p)·√((E − 1)/2)`, with `sign(0) = 0`.
///
/// Written as `p/√(2(E + 1))` to avoid the cancellation in `E − 1`.
pub fn d_minus_signed(p: f64) -> f64 {
    p / (2.0 * (energy(p) + 1.0)).sqrt()
}

/// `|d_minus_signed(p)|`, the operator as literally printed without the sign.
pub fn d_minus_unsigned(p: f64) -> f64 {
    d_minus_signed(p).abs()
}

/// Spinor-lift symbol `p/(1 + E)`.
pub fn d_vel(p: f64) -> f64 {
    p / (1.0 + energy(p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DOperator {
    Plus,
    MinusSigned,
    /// Unsigned variant, kept for side-by-side comparison only.
    MinusUnsigned,
    Vel,
}

impl DOperator {
    pub fn symbol(self, p: f64) -> f64 {
        match self {
            DOperator::Plus => d_plus(p),
            DOperator::MinusSigned => d_minus_signed(p),
            DOperator::MinusUnsigned => d_minus_unsigned(p),
            DOperator::Vel => d_vel(p),
        }
    }
}

pub fn apply_d_operator(psi: &WaveFunction, which: DOperator) -> WaveFunction {
    psi.map_real_spectrum(|p| which.symbol(p))
}

pub fn apply_hamiltonian(psi: &WaveFunction) -> WaveFunction {
    psi.map_real_spectrum(energy)
}

/// Free evolution `exp(−iĤt)ψ`.
pub fn evolve_free(psi: &WaveFunction, t: f64) -> WaveFunction {
    if t == 0.0 {
        return psi.clone();
    }
    psi.map_spectrum(|p| Complex64::from_polar(1.0, -energy(p) * t))
}

/// Number of retained terms of the derivative series `Σ_k (½ choose k)(−∇²)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeriesTruncation {
    pub k_max: usize,
}

impl SeriesTruncation {
    pub fn new(k_max: usize) -> Self {
        Self { k_max }
    }

    /// Generalized binomial coefficients `(½ choose k)` for `k = 0..=k_max`.
    pub fn coefficients(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.k_max + 1);
        let mut c = 1.0;
        out.push(c);
        for k in 1..=self.k_max {
            c *= (0.5 - (k - 1) as f64) / k as f64;
            out.push(c);
        }
        out
    }

    /// Momentum-space symbol of the truncated series, `Σ_k c_k (p²)^k`.
    pub fn symbol(&self, p: f64) -> f64 {
        let p2 = p * p;
        // Horner in p²
        self.coefficients().iter().rev().fold(0.0, |acc, c| acc * p2 + c)
    }
}

/// Fraction of `Σ|φ|²` carried by momenta with `|p| >= 1`.
pub fn spectral_mass_outside_unit_band(psi: &WaveFunction) -> f64 {
    let phi = psi.to_momentum();
    let g = phi.grid();
    let (mut outside, mut total) = (0.0, 0.0);
    for (i, v) in phi.values().iter().enumerate() {
        let w = v.norm_sqr();
        total += w;
        if g.momentum(i).abs() >= 1.0 {
            outside += w;
        }
    }
    if total == 0.0 {
        0.0
    } else {
        outside / total
    }
}

/// Applies the truncated derivative series. Only valid on states whose
/// spectrum lies inside the unit band, the radius of convergence.
///
/// The series is applied to the part of the spectrum inside the band; the
/// remainder, below `SERIES_DIVERGENCE_FRACTION` by the check above, is
/// dropped. Keeping it would multiply FFT round-off at large `|p|` by a
/// polynomial of degree `2·k_max`.
pub fn apply_hamiltonian_series(psi: &WaveFunction, trunc: SeriesTruncation) -> Result<WaveFunction> {
    let fraction = spectral_mass_outside_unit_band(psi);
    if fraction >= SERIES_DIVERGENCE_FRACTION {
        return Err(Error::SeriesDivergence { fraction });
    }
    let coeffs = trunc.coefficients();
    Ok(psi.map_real_spectrum(|p| {
        if p.abs() >= 1.0 {
            return 0.0;
        }
        let p2 = p * p;
        coeffs.iter().rev().fold(0.0, |acc, c| acc * p2 + c)
    }))
}

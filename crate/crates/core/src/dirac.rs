//! Two-component Dirac fields in 1+1 dimensions with `α = σ_x`, `β = σ_z`,
//! so `H_D = α p̂ + β`, `ρ_D = Ψ†Ψ` and `J_D = Ψ†αΨ`.
//!
//! The spinor lift `ψ ↦ (ψ, D̂ψ)` maps square-root Klein-Gordon states onto
//! positive-energy Dirac states.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{CurrentField, DensityField, Grid1D, MomentumSpectrum, RealField, WaveFunction};
use crate::kernels::{current, density, KernelKind};
use crate::salpeter::{apply_d_operator, d_vel, energy, evolve_free, DOperator};

#[derive(Debug, Clone, PartialEq)]
pub struct DiracField {
    upper: WaveFunction,
    lower: WaveFunction,
}

impl DiracField {
    pub fn new(upper: WaveFunction, lower: WaveFunction) -> Result<Self> {
        if upper.grid() != lower.grid() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { upper, lower })
    }

    pub fn grid(&self) -> &Grid1D {
        self.upper.grid()
    }

    pub fn upper(&self) -> &WaveFunction {
        &self.upper
    }

    pub fn lower(&self) -> &WaveFunction {
        &self.lower
    }

    /// `∫ Ψ†Ψ dx`.
    pub fn norm_sqr(&self) -> f64 {
        self.upper.norm_sqr() + self.lower.norm_sqr()
    }

    /// Largest pointwise spinor distance `max_j |Ψ_j − Φ_j|`.
    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        if self.grid() != other.grid() {
            return Err(Error::GridMismatch);
        }
        let up = self.upper.values().iter().zip(other.upper.values());
        let low = self.lower.values().iter().zip(other.lower.values());
        Ok(up.zip(low).map(|((a, b), (c, d))| ((a - b).norm_sqr() + (c - d).norm_sqr()).sqrt()).fold(0.0, f64::max))
    }
}

/// `Ψ = (ψ, D̂ψ)`.
pub fn lift(psi: &WaveFunction) -> DiracField {
    DiracField { upper: psi.clone(), lower: apply_d_operator(psi, DOperator::Vel) }
}

/// `(ρ_D, J_D) = (|Ψ₁|² + |Ψ₂|², 2·Re(Ψ₁*Ψ₂))`.
pub fn dirac_current(field: &DiracField) -> (DensityField, CurrentField) {
    let pairs = field.upper.values().iter().zip(field.lower.values());
    let (rho, j): (Vec<f64>, Vec<f64>) =
        pairs.map(|(u, l)| (u.norm_sqr() + l.norm_sqr(), 2.0 * (u.conj() * l).re)).unzip();
    let g = *field.grid();
    (RealField::new(g, rho).expect("length follows grid"), RealField::new(g, j).expect("length follows grid"))
}

/// Exact free Dirac evolution: every momentum mode is multiplied by
/// `exp(−it(αp + β)) = cos(Et) − i sin(Et)/E·(αp + β)`.
pub fn dirac_evolve(field: &DiracField, t: f64) -> DiracField {
    if t == 0.0 {
        return field.clone();
    }
    let up = field.upper.to_momentum();
    let low = field.lower.to_momentum();
    let g = *field.grid();
    let (mut new_up, mut new_low) = (Vec::with_capacity(g.n_points()), Vec::with_capacity(g.n_points()));
    for (i, (u, l)) in up.values().iter().zip(low.values()).enumerate() {
        let p = g.momentum(i);
        let e = energy(p);
        let (s, co) = (e * t).sin_cos();
        let diag_up = Complex64::new(co, -s / e);
        let diag_low = Complex64::new(co, s / e);
        let off = Complex64::new(0.0, -s * p / e);
        new_up.push(diag_up * u + off * l);
        new_low.push(off * u + diag_low * l);
    }
    let to_pos = |v| MomentumSpectrum::new(g, v).expect("length follows grid").to_position();
    DiracField { upper: to_pos(new_up), lower: to_pos(new_low) }
}

/// Fraction of `∫Ψ†Ψ` carried by negative-energy eigenvectors `(−D, 1)` of
/// `αp + β`, mode by mode.
pub fn negative_energy_fraction(field: &DiracField) -> f64 {
    let up = field.upper.to_momentum();
    let low = field.lower.to_momentum();
    let g = field.grid();
    let (mut negative, mut total) = (0.0, 0.0);
    for (i, (u, l)) in up.values().iter().zip(low.values()).enumerate() {
        let d = d_vel(g.momentum(i));
        negative += (l - u * d).norm_sqr() / (1.0 + d * d);
        total += u.norm_sqr() + l.norm_sqr();
    }
    if total == 0.0 {
        0.0
    } else {
        negative / total
    }
}

/// Residuals of the spin-1/2 / Dirac correspondence for `psi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquivalenceResiduals {
    /// Sup-norm gap between `(ρ_D, J_D)` of the lift and the spin-1/2 pair.
    pub current_residual: f64,
    /// Sup-norm gap between `dirac_evolve(lift ψ, t)` and `lift(evolve ψ)`.
    pub evolution_residual: f64,
}

pub fn equivalence_residuals(psi: &WaveFunction, t: f64) -> Result<EquivalenceResiduals> {
    let lifted = lift(psi);
    let (rho_d, j_d) = dirac_current(&lifted);
    let rho = density(psi, KernelKind::SpinHalf)?;
    let j = current(psi, KernelKind::SpinHalf)?;
    let current_residual = rho_d.sup_distance(&rho)?.max(j_d.sup_distance(&j)?);

    let via_dirac = dirac_evolve(&lifted, t);
    let via_salpeter = lift(&evolve_free(psi, t));
    let evolution_residual = via_dirac.sup_distance(&via_salpeter)?;
    Ok(EquivalenceResiduals { current_residual, evolution_residual })
}

//! Probability densities and currents built from a symmetric momentum kernel
//! `F(p₁, p₂)`.
//!
//! Every kernel defines the pair
//!
//! ```text
//! (ρ, J)(x) = (1/2π) ∫∫ F(p₁,p₂)·(1, u(p₁,p₂))·φ*(p₁)φ(p₂)e^{i(p₂−p₁)x} dp₁dp₂
//! ```
//!
//! with pair velocity `u = (p₁ + p₂)/(E₁ + E₂)`. The Born, scalar and
//! spin-1/2 kernels also factor into local products of pseudo-differential
//! operators, which are used as fast paths. The generic pair-sum path works
//! for every kernel and serves as the oracle for the fast ones.

mod pair_sum;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{CurrentField, DensityField, RealField, WaveFunction};
use crate::salpeter::{apply_d_operator, energy, evolve_free, DOperator};
use crate::states::PlaneWaveSuperposition;

pub(crate) use pair_sum::pair_sum_field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    /// `F ≡ 1`, i.e. `ρ = |ψ|²`.
    Born,
    /// `F = γ(p₁, p₂)`.
    Scalar,
    /// `F = 1 + D(p₁)D(p₂)` with `D(p) = p/(1 + E)`.
    SpinHalf,
    /// `F = γ/[(γ − 1)(γ − 1)]^{n/2}` exactly as printed. Singular wherever
    /// `γ = 1`.
    LiteralHalfInteger(u32),
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelKind::Born => write!(f, "born"),
            KernelKind::Scalar => write!(f, "scalar"),
            KernelKind::SpinHalf => write!(f, "spinhalf"),
            KernelKind::LiteralHalfInteger(n) => write!(f, "literal:{n}"),
        }
    }
}

impl FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "born" => Ok(KernelKind::Born),
            "scalar" => Ok(KernelKind::Scalar),
            "spinhalf" => Ok(KernelKind::SpinHalf),
            other => other
                .strip_prefix("literal:")
                .and_then(|n| n.parse().ok())
                .map(KernelKind::LiteralHalfInteger)
                .ok_or_else(|| Error::UnknownKernel(s.to_string())),
        }
    }
}

/// `E − p` without cancellation.
fn e_minus_p(p: f64) -> f64 {
    if p >= 0.0 {
        1.0 / (energy(p) + p)
    } else {
        energy(p) - p
    }
}

fn e_plus_p(p: f64) -> f64 {
    e_minus_p(-p)
}

/// Pair velocity `(p₁ + p₂)/(E₁ + E₂)`.
pub fn u_pair(p1: f64, p2: f64) -> f64 {
    (p1 + p2) / (energy(p1) + energy(p2))
}

/// Lorentz factor of the pair velocity.
pub fn gamma_pair(p1: f64, p2: f64) -> f64 {
    // 1 − u² = [(E₁−p₁)+(E₂−p₂)]·[(E₁+p₁)+(E₂+p₂)]/(E₁+E₂)²
    let s_minus = e_minus_p(p1) + e_minus_p(p2);
    let s_plus = e_plus_p(p1) + e_plus_p(p2);
    (energy(p1) + energy(p2)) / (s_minus * s_plus).sqrt()
}

/// `γ − 1` computed as `γ²u²/(γ + 1)`; exactly zero when `p₁ = −p₂`.
fn gamma_minus_one(p1: f64, p2: f64) -> f64 {
    let g = gamma_pair(p1, p2);
    let u = u_pair(p1, p2);
    g * g * u * u / (g + 1.0)
}

pub fn kernel_value(kind: KernelKind, p1: f64, p2: f64) -> Result<f64> {
    match kind {
        KernelKind::Born => Ok(1.0),
        KernelKind::Scalar => Ok(gamma_pair(p1, p2)),
        KernelKind::SpinHalf => Ok(1.0 + crate::salpeter::d_vel(p1) * crate::salpeter::d_vel(p2)),
        KernelKind::LiteralHalfInteger(0) => Ok(gamma_pair(p1, p2)),
        KernelKind::LiteralHalfInteger(n) => {
            let gm1 = gamma_minus_one(p1, p2);
            if gm1 == 0.0 {
                return Err(Error::KernelSingularity { kernel: kind.to_string(), p1, p2 });
            }
            Ok(gamma_pair(p1, p2) / (gm1 * gm1).powf(0.5 * n as f64))
        }
    }
}

/// Current kernel `F(p₁,p₂)·u(p₁,p₂)`.
pub fn current_kernel_value(kind: KernelKind, p1: f64, p2: f64) -> Result<f64> {
    Ok(kernel_value(kind, p1, p2)? * u_pair(p1, p2))
}

fn field(psi: &WaveFunction, values: Vec<f64>) -> RealField {
    RealField::new(*psi.grid(), values).expect("field length follows the grid")
}

fn sum_of_squares(a: &WaveFunction, b: &WaveFunction) -> Vec<f64> {
    a.values().iter().zip(b.values()).map(|(x, y)| x.norm_sqr() + y.norm_sqr()).collect()
}

/// `2·Re(conj(a)·b)` pointwise.
fn cross_term(a: &WaveFunction, b: &WaveFunction) -> Vec<f64> {
    a.values().iter().zip(b.values()).map(|(x, y)| 2.0 * (x.conj() * y).re).collect()
}

/// `∂ₓ[2·Re(conj(a)·b)]` by the product rule on spectral derivatives.
fn cross_term_gradient(a: &WaveFunction, b: &WaveFunction) -> Vec<f64> {
    let (da, db) = (a.derivative(), b.derivative());
    a.values()
        .iter()
        .zip(b.values())
        .zip(da.values().iter().zip(db.values()))
        .map(|((x, y), (dx, dy))| 2.0 * (dx.conj() * y + x.conj() * dy).re)
        .collect()
}

/// Pair of operators `(A, B)` whose images factor the kernel.
///
/// Scalar: `γ = D⁺D⁺ + D⁻D⁻` and `γu = D⁺D⁻ + D⁻D⁺`.
/// Spin-1/2: `1 + DD` and `(1 + DD)u = D + D`.
fn factors(psi: &WaveFunction, kind: KernelKind) -> Option<(WaveFunction, WaveFunction)> {
    match kind {
        KernelKind::Scalar => {
            Some((apply_d_operator(psi, DOperator::Plus), apply_d_operator(psi, DOperator::MinusSigned)))
        }
        KernelKind::SpinHalf => Some((psi.clone(), apply_d_operator(psi, DOperator::Vel))),
        _ => None,
    }
}

pub fn density(psi: &WaveFunction, kind: KernelKind) -> Result<DensityField> {
    match kind {
        KernelKind::Born => Ok(field(psi, psi.values().iter().map(|v| v.norm_sqr()).collect())),
        KernelKind::Scalar | KernelKind::SpinHalf => {
            let (a, b) = factors(psi, kind).expect("separable kernel");
            Ok(field(psi, sum_of_squares(&a, &b)))
        }
        KernelKind::LiteralHalfInteger(_) => density_generic(psi, kind),
    }
}

/// Density by the generic O(N²) pair sum, valid for every kernel.
pub fn density_generic(psi: &WaveFunction, kind: KernelKind) -> Result<DensityField> {
    let values = pair_sum_field(&psi.to_momentum(), |a, b| kernel_value(kind, a, b), false)?;
    Ok(field(psi, values))
}

pub fn current(psi: &WaveFunction, kind: KernelKind) -> Result<CurrentField> {
    match factors(psi, kind) {
        Some((a, b)) => Ok(field(psi, cross_term(&a, &b))),
        None => current_generic(psi, kind),
    }
}

/// Current by the generic O(N²) pair sum with kernel `F·u`.
pub fn current_generic(psi: &WaveFunction, kind: KernelKind) -> Result<CurrentField> {
    let values = pair_sum_field(&psi.to_momentum(), |a, b| current_kernel_value(kind, a, b), false)?;
    Ok(field(psi, values))
}

/// Exact spatial derivative `∂ₓJ` of the band-limited current.
pub fn current_gradient(psi: &WaveFunction, kind: KernelKind) -> Result<CurrentField> {
    match factors(psi, kind) {
        Some((a, b)) => Ok(field(psi, cross_term_gradient(&a, &b))),
        None => {
            let values = pair_sum_field(&psi.to_momentum(), |a, b| current_kernel_value(kind, a, b), true)?;
            Ok(field(psi, values))
        }
    }
}

/// `|D⁺ψ|² + |D⁻ψ|²` with the unsigned `D⁻`. Diagnostic only: it disagrees
/// with the scalar kernel for states holding both momentum signs.
pub fn unsigned_separated_density(psi: &WaveFunction) -> DensityField {
    let a = apply_d_operator(psi, DOperator::Plus);
    let b = apply_d_operator(psi, DOperator::MinusUnsigned);
    field(psi, sum_of_squares(&a, &b))
}

/// Sup-norm continuity residual `|∂ₜρ + ∂ₓJ|` with a central difference in
/// time (step `dt`) and the exact spatial derivative.
pub fn continuity_residual(psi: &WaveFunction, kind: KernelKind, dt: f64) -> Result<f64> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidTimeStep(dt));
    }
    let ahead = density(&evolve_free(psi, dt), kind)?;
    let behind = density(&evolve_free(psi, -dt), kind)?;
    let div = current_gradient(psi, kind)?;
    Ok(ahead
        .values()
        .iter()
        .zip(behind.values())
        .zip(div.values())
        .map(|((a, b), d)| ((a - b) / (2.0 * dt) + d).abs())
        .fold(0.0, f64::max))
}

/// Rescales `psi` so that its kernel density integrates to one.
pub fn normalize_for_kernel(psi: &WaveFunction, kind: KernelKind) -> Result<WaveFunction> {
    let total = density(psi, kind)?.integral();
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::ZeroState);
    }
    Ok(psi.scaled(Complex64::new(1.0 / total.sqrt(), 0.0)))
}

/// Density and current of a plane-wave superposition at one event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourCurrentSample {
    pub t: f64,
    pub x: f64,
    pub j0: f64,
    pub j1: f64,
    /// Largest imaginary part left over by the complex double sum.
    pub imag_residual: f64,
}

/// Closed-form four-current of `s` at `(t, x)`:
/// `Σ_{i,j} F_ij (1, u_ij) conj(A_i) A_j exp(i[(p_j−p_i)x − (E_j−E_i)t])`.
pub fn fourcurrent_planewaves(
    s: &PlaneWaveSuperposition,
    kind: KernelKind,
    t: f64,
    x: f64,
) -> Result<FourCurrentSample> {
    let waves: Vec<Complex64> =
        s.terms().iter().map(|w| w.amplitude * Complex64::from_polar(1.0, w.momentum * x - w.energy() * t)).collect();
    let (mut j0, mut j1) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for (i, wi) in s.terms().iter().enumerate() {
        for (j, wj) in s.terms().iter().enumerate() {
            let f = kernel_value(kind, wi.momentum, wj.momentum)?;
            let w = waves[i].conj() * waves[j] * f;
            j0 += w;
            j1 += w * u_pair(wi.momentum, wj.momentum);
        }
    }
    Ok(FourCurrentSample { t, x, j0: j0.re, j1: j1.re, imag_residual: j0.im.abs().max(j1.im.abs()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid1D;
    use crate::salpeter::{d_minus_signed, d_plus, d_vel};
    use crate::states::{box_state, gaussian_state};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pair_velocity() {
        assert_eq!(u_pair(0.7, -0.7), 0.0);
        assert_eq!(u_pair(0.0, 0.0), 0.0);
        let p = 1.3;
        assert!((u_pair(p, p) - p / energy(p)).abs() < 1e-15);
        assert!(u_pair(1e6, 2e6).abs() < 1.0);
    }

    #[test]
    fn pair_gamma() {
        assert!((gamma_pair(0.9, -0.9) - 1.0).abs() < 1e-15);
        for p in [0.0, 0.3, -2.0, 17.0] {
            assert!((gamma_pair(p, p) - energy(p)).abs() < 1e-13 * energy(p));
        }
        let (p1, p2) = (0.5, 1.0);
        let sep = d_plus(p1) * d_plus(p2) + d_minus_signed(p1) * d_minus_signed(p2);
        assert!((gamma_pair(p1, p2) - sep).abs() < 1e-14);
        assert_eq!(gamma_pair(0.4, -1.1), gamma_pair(-1.1, 0.4));
    }

    #[test]
    fn unsigned_separation_breaks_for_opposite_momenta() {
        let p = 0.8;
        let unsigned = d_plus(p) * d_plus(-p) + d_minus_signed(p).abs() * d_minus_signed(-p).abs();
        assert!((unsigned - energy(p)).abs() < 1e-14);
        assert!((gamma_pair(p, -p) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_values() {
        assert_eq!(kernel_value(KernelKind::SpinHalf, 0.0, 0.0).unwrap(), 1.0);
        assert_eq!(kernel_value(KernelKind::Born, 3.0, -9.0).unwrap(), 1.0);
        for p in [0.1, 0.5, -2.5] {
            let e = energy(p);
            let f = kernel_value(KernelKind::SpinHalf, p, p).unwrap();
            assert!((f - 2.0 * e / (1.0 + e)).abs() < 1e-14);
        }
        assert_eq!(
            kernel_value(KernelKind::SpinHalf, 0.3, 1.2).unwrap(),
            kernel_value(KernelKind::SpinHalf, 1.2, 0.3).unwrap()
        );
    }

    #[test]
    fn literal_kernel_singularity() {
        let k = KernelKind::LiteralHalfInteger(1);
        assert!(matches!(kernel_value(k, 0.4, -0.4), Err(Error::KernelSingularity { .. })));
        assert!(matches!(kernel_value(k, 0.0, 0.0), Err(Error::KernelSingularity { .. })));
        let g = gamma_pair(0.5, 0.5);
        assert!((kernel_value(k, 0.5, 0.5).unwrap() - g / (g - 1.0)).abs() < 1e-10);
        assert_eq!(
            kernel_value(KernelKind::LiteralHalfInteger(0), 0.2, 0.9).unwrap(),
            kernel_value(KernelKind::Scalar, 0.2, 0.9).unwrap()
        );
    }

    #[test]
    fn kernel_parsing() {
        assert_eq!("born".parse::<KernelKind>().unwrap(), KernelKind::Born);
        assert_eq!("Scalar".parse::<KernelKind>().unwrap(), KernelKind::Scalar);
        assert_eq!("spinhalf".parse::<KernelKind>().unwrap(), KernelKind::SpinHalf);
        assert_eq!("literal:3".parse::<KernelKind>().unwrap(), KernelKind::LiteralHalfInteger(3));
        assert!("literal:x".parse::<KernelKind>().is_err());
        assert!("dirac".parse::<KernelKind>().is_err());
        for k in [KernelKind::Born, KernelKind::LiteralHalfInteger(2)] {
            assert_eq!(k.to_string().parse::<KernelKind>().unwrap(), k);
        }
    }

    fn plane_wave_grid() -> Grid1D {
        Grid1D::new(-10.0 * PI, 10.0 * PI, 128).unwrap()
    }

    #[test]
    fn plane_wave_densities_and_currents() {
        let g = plane_wave_grid();
        let k = 7;
        let p = k as f64 * g.dp();
        let amp = c(0.6, -0.3);
        let psi = WaveFunction::from_fn(g, |x| amp * Complex64::from_polar(1.0, p * x));
        let a2 = amp.norm_sqr();
        let e = energy(p);

        let rho = density(&psi, KernelKind::Scalar).unwrap();
        assert!(rho.values().iter().all(|v| (v - e * a2).abs() < 1e-12));

        let j_born = current(&psi, KernelKind::Born).unwrap();
        assert!(j_born.values().iter().all(|v| (v - p / e * a2).abs() < 1e-12));

        let j_scalar = current(&psi, KernelKind::Scalar).unwrap();
        assert!(j_scalar.values().iter().all(|v| (v - p * a2).abs() < 1e-12));
    }

    #[test]
    fn real_state_has_no_spin_half_current() {
        // real and band-limited: two standing waves, no Nyquist content
        let g = plane_wave_grid();
        let (p1, p2) = (3.0 * g.dp(), 11.0 * g.dp());
        let psi = WaveFunction::from_fn(g, |x| c((p1 * x).sin() + 0.4 * (p2 * x + 0.3).cos(), 0.0));
        let j = current(&psi, KernelKind::SpinHalf).unwrap();
        assert!(j.sup_norm() < 1e-12);
    }

    #[test]
    fn fast_paths_match_generic() {
        let g = Grid1D::new(-12.0, 12.0, 128).unwrap();
        let psi = gaussian_state(1.0, 0.8, 0.7, g).unwrap();
        for kind in [KernelKind::Born, KernelKind::Scalar, KernelKind::SpinHalf] {
            let fast = density(&psi, kind).unwrap();
            let slow = density_generic(&psi, kind).unwrap();
            assert!(fast.sup_distance(&slow).unwrap() < 1e-12, "{kind} density");
            let fast = current(&psi, kind).unwrap();
            let slow = current_generic(&psi, kind).unwrap();
            assert!(fast.sup_distance(&slow).unwrap() < 1e-12, "{kind} current");
        }
    }

    #[test]
    fn fourcurrent_single_term() {
        let (amp, p) = (c(0.5, 0.5), 1.4);
        let s = PlaneWaveSuperposition::from_pairs(&[(amp, p)]).unwrap();
        let j = fourcurrent_planewaves(&s, KernelKind::Scalar, 0.7, -2.0).unwrap();
        assert!((j.j0 - energy(p) * 0.5).abs() < 1e-14);
        assert!((j.j1 - p * 0.5).abs() < 1e-14);
        assert!(j.imag_residual < 1e-14);
    }

    #[test]
    fn fourcurrent_born_factorizes() {
        let s = PlaneWaveSuperposition::from_pairs(&[(c(1.0, 0.2), -0.4), (c(-0.3, 0.8), 1.1), (c(0.5, 0.0), 2.0)])
            .unwrap();
        for x in [-1.0, 0.0, 0.45] {
            let j = fourcurrent_planewaves(&s, KernelKind::Born, 0.0, x).unwrap();
            assert!((j.j0 - s.sample(0.0, x).norm_sqr()).abs() < 1e-13);
        }
    }

    #[test]
    fn literal_density_propagates_singularity() {
        let g = Grid1D::around_box(1.0, 4.0, 64).unwrap();
        let psi = box_state(1.0, 1, g).unwrap();
        assert!(matches!(density(&psi, KernelKind::LiteralHalfInteger(1)), Err(Error::KernelSingularity { .. })));
    }

    #[test]
    fn normalization_per_kernel() {
        let g = Grid1D::new(-160.0, 160.0, 1024).unwrap();
        let psi = gaussian_state(0.0, 1.0, 0.05, g).unwrap();
        let born = normalize_for_kernel(&psi, KernelKind::Born).unwrap();
        assert!((born.norm() - 1.0).abs() < 1e-12);
        let scalar = normalize_for_kernel(&psi, KernelKind::Scalar).unwrap();
        assert!((density(&scalar, KernelKind::Scalar).unwrap().integral() - 1.0).abs() < 1e-10);
        // narrow packet: ∫ρ ≈ E(p₀), so the rescale is ≈ E(p₀)^{-1/2}
        let factor = scalar.norm() / psi.norm();
        assert!((factor - 1.0 / energy(1.0).sqrt()).abs() < 1e-3);
        let twice = normalize_for_kernel(&scalar, KernelKind::Scalar).unwrap();
        assert!(twice.sup_distance(&scalar).unwrap() < 1e-12 * scalar.sup_norm());
        assert_eq!(normalize_for_kernel(&WaveFunction::zeros(g), KernelKind::Scalar), Err(Error::ZeroState));
    }

    #[test]
    fn continuity_plane_wave() {
        let g = plane_wave_grid();
        let p = 5.0 * g.dp();
        let psi = WaveFunction::from_fn(g, |x| Complex64::from_polar(1.0, p * x));
        for kind in [KernelKind::Born, KernelKind::Scalar, KernelKind::SpinHalf] {
            assert!(continuity_residual(&psi, kind, 1e-4).unwrap() < 1e-10, "{kind}");
        }
        assert!(matches!(continuity_residual(&psi, KernelKind::Born, 0.0), Err(Error::InvalidTimeStep(_))));
    }

    #[test]
    fn d_vel_is_odd() {
        assert_eq!(d_vel(-0.3), -d_vel(0.3));
    }
}

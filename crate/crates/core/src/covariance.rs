//! Lorentz boosts acting on plane-wave superpositions, and the tests that
//! decide whether a kernel's `(ρ, J)` transforms as a four-vector.
//!
//! A boost with velocity `v` maps an event and a two-vector as
//!
//! ```text
//! t' = γ_v (t − v x)     x' = γ_v (x − v t)
//! j0' = γ_v (j0 − v j1)  j1' = γ_v (j1 − v j0)
//! ```
//!
//! and each plane-wave momentum as `p' = γ_v (p − v E(p))`, which leaves the
//! phase `p x − E t` invariant.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kernels::{fourcurrent_planewaves, gamma_pair, kernel_value, KernelKind};
use crate::salpeter::energy;
use crate::states::{PlaneWave, PlaneWaveSuperposition, MOMENTUM_DISTINCTNESS};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    velocity: f64,
}

impl Boost {
    pub fn new(velocity: f64) -> Result<Self> {
        if !(velocity.is_finite() && velocity.abs() < 1.0) {
            return Err(Error::InvalidVelocity(velocity));
        }
        Ok(Self { velocity })
    }

    pub fn identity() -> Self {
        Self { velocity: 0.0 }
    }

    pub fn velocity(&self) -> f64 {
        self.velocity
    }

    pub fn gamma(&self) -> f64 {
        1.0 / ((1.0 - self.velocity) * (1.0 + self.velocity)).sqrt()
    }

    pub fn inverse(&self) -> Self {
        Self { velocity: -self.velocity }
    }

    /// Boosted coordinates of the event `(t, x)`.
    pub fn event(&self, t: f64, x: f64) -> (f64, f64) {
        let (g, v) = (self.gamma(), self.velocity);
        (g * (t - v * x), g * (x - v * t))
    }

    /// Boosted components of a contravariant two-vector `(a0, a1)`.
    pub fn vector(&self, a0: f64, a1: f64) -> (f64, f64) {
        self.event(a0, a1)
    }
}

/// Relativistic velocity addition of two boosts.
pub fn compose_boosts(b1: Boost, b2: Boost) -> Boost {
    let (v1, v2) = (b1.velocity, b2.velocity);
    Boost { velocity: (v1 + v2) / (1.0 + v1 * v2) }
}

/// `p' = γ_v (p − v E(p))`.
pub fn boost_momentum(p: f64, b: Boost) -> f64 {
    b.gamma() * (p - b.velocity * energy(p))
}

/// Boosts every momentum and rescales each amplitude magnitude by
/// `|A'|² = (F_ii/F'_ii)(γ'_ii/γ_ii)|A|²`, keeping its phase.
pub fn transform_amplitudes(s: &PlaneWaveSuperposition, b: Boost, kind: KernelKind) -> Result<PlaneWaveSuperposition> {
    let terms = s
        .terms()
        .iter()
        .map(|w| {
            let p = w.momentum;
            let q = boost_momentum(p, b);
            let f = kernel_value(kind, p, p)?;
            let f_boosted = kernel_value(kind, q, q)?;
            let ratio = (f / f_boosted) * (gamma_pair(q, q) / gamma_pair(p, p));
            Ok(PlaneWave::new(w.amplitude * ratio.sqrt(), q))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PlaneWaveSuperposition::with_terms_unchecked(terms))
}

/// Both sides of the four-vector constraint for one momentum pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstraintReport {
    pub p_i: f64,
    pub p_j: f64,
    pub velocity: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

/// `F_ij² / (F_ii F_jj)` for an arbitrary kernel function.
fn pair_ratio(f: impl Fn(f64, f64) -> Result<f64>, pi: f64, pj: f64) -> Result<f64> {
    let fij = f(pi, pj)?;
    Ok(fij * fij / (f(pi, pi)? * f(pj, pj)?))
}

/// Evaluates
/// `[F'_ij²/(F'_ii F'_jj)]·[F_ii F_jj/F_ij²]` against the same expression
/// with `F` replaced by `γ`.
pub fn constraint_report(kind: KernelKind, p_i: f64, p_j: f64, b: Boost) -> Result<ConstraintReport> {
    if (p_i - p_j).abs() <= MOMENTUM_DISTINCTNESS {
        return Err(Error::CoincidentMomenta(p_i, p_j));
    }
    let (q_i, q_j) = (boost_momentum(p_i, b), boost_momentum(p_j, b));
    let f = |a: f64, c: f64| kernel_value(kind, a, c);
    let g = |a: f64, c: f64| Ok(gamma_pair(a, c));
    let lhs = pair_ratio(f, q_i, q_j)? / pair_ratio(f, p_i, p_j)?;
    let rhs = pair_ratio(g, q_i, q_j)? / pair_ratio(g, p_i, p_j)?;
    Ok(ConstraintReport { p_i, p_j, velocity: b.velocity, lhs, rhs, residual: (lhs - rhs).abs() })
}

/// 3×3 lattice of events spanning one Compton wavelength and one Compton
/// time around the origin.
pub fn default_events() -> Vec<(f64, f64)> {
    let ticks = [-0.5, 0.0, 0.5];
    ticks.iter().flat_map(|&t| ticks.iter().map(move |&x| (t, x))).collect()
}

/// Largest Euclidean gap `|J'(Λe) − ΛJ(e)|` over `events`, where `J'` is the
/// current of the boosted superposition `primed`.
fn residual_against(
    s: &PlaneWaveSuperposition,
    primed: &PlaneWaveSuperposition,
    kind: KernelKind,
    b: Boost,
    events: &[(f64, f64)],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &(t, x) in events {
        let j = fourcurrent_planewaves(s, kind, t, x)?;
        let (t2, x2) = b.event(t, x);
        let j_primed = fourcurrent_planewaves(primed, kind, t2, x2)?;
        let (w0, w1) = b.vector(j.j0, j.j1);
        worst = worst.max((j_primed.j0 - w0).hypot(j_primed.j1 - w1));
    }
    Ok(worst)
}

/// Four-vector covariance residual of a kernel's current on `s` under `b`.
pub fn covariance_residual(
    s: &PlaneWaveSuperposition,
    kind: KernelKind,
    b: Boost,
    events: &[(f64, f64)],
) -> Result<f64> {
    if events.is_empty() {
        return Err(Error::NoEvents);
    }
    let primed = transform_amplitudes(s, b, kind)?;
    residual_against(s, &primed, kind, b, events)
}

/// Smallest covariance residual reachable by additionally rescaling each
/// boosted amplitude magnitude by any combination of `factors`.
///
/// Returns the minimum and the per-term factors achieving it.
pub fn min_residual_over_rescalings(
    s: &PlaneWaveSuperposition,
    kind: KernelKind,
    b: Boost,
    events: &[(f64, f64)],
    factors: &[f64],
) -> Result<(f64, Vec<f64>)> {
    if events.is_empty() {
        return Err(Error::NoEvents);
    }
    let primed = transform_amplitudes(s, b, kind)?;
    let terms = s.len();
    let combos = factors.len().pow(terms as u32);
    let results = (0..combos)
        .into_par_iter()
        .map(|mut code| {
            let mut chosen = Vec::with_capacity(terms);
            for _ in 0..terms {
                chosen.push(factors[code % factors.len()]);
                code /= factors.len();
            }
            let rescaled = primed.map_amplitudes(|i, a| a * chosen[i]);
            residual_against(s, &rescaled, kind, b, events).map(|r| (r, chosen))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(results.into_iter().min_by(|a, b| a.0.total_cmp(&b.0)).expect("at least one factor combination"))
}

/// Geometrically spaced factors from `lo` to `hi` (inclusive).
pub fn geometric_factors(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count).map(|k| lo * (hi / lo).powf(k as f64 / (count - 1) as f64)).collect(),
    }
}

/// Unit-amplitude two-wave superposition with momenta `p_i`, `p_j`.
pub fn two_wave(p_i: f64, p_j: f64) -> Result<PlaneWaveSuperposition> {
    let one = Complex64::new(1.0, 0.0);
    PlaneWaveSuperposition::from_pairs(&[(one, p_i), (one, p_j)])
}

//! Pass/fail thresholds shared by the command-line harnesses and the
//! acceptance suite. Version 1.

/// Four-vector residual allowed for the scalar and spin-1/2 currents on
/// random plane-wave superpositions.
pub const COVARIANCE_RESIDUAL_MAX: f64 = 1e-10;

/// Constraint-equation residual for kernels that solve it.
pub const CONSTRAINT_RESIDUAL_MAX: f64 = 1e-12;

/// The Born kernel must violate the constraint equation by more than this at
/// the witness configuration.
pub const BORN_CONSTRAINT_MIN: f64 = 1e-3;

/// The Born four-vector residual must exceed this at the witness, for every
/// amplitude rescaling in the scan.
pub const BORN_COVARIANCE_MIN: f64 = 1e-2;

/// Weakest Born violation the `covariance` command accepts before failing.
pub const BORN_WITNESS_CLI_MIN: f64 = 1e-6;

/// Witness momenta `±p` and boost velocity for the Born failure.
pub const BORN_WITNESS_MOMENTUM: f64 = 0.5;
pub const BORN_WITNESS_VELOCITY: f64 = 0.5;

/// Per-term amplitude rescaling scan: `RESCALE_STEPS` factors in
/// `[RESCALE_MIN, RESCALE_MAX]`.
pub const RESCALE_MIN: f64 = 0.5;
pub const RESCALE_MAX: f64 = 2.0;
pub const RESCALE_STEPS: usize = 21;

/// `|γ − (D⁺D⁺ + D⁻D⁻)|` on the separation grid.
pub const SEPARATION_IDENTITY_MAX: f64 = 1e-12;

/// Densities may dip below zero by at most this much.
pub const POSITIVITY_FLOOR: f64 = -1e-10;

/// Relative sup deviation from the Born density in the non-relativistic
/// limit (σ_p = 0.01, p₀ = 0).
pub const NONRELATIVISTIC_DEVIATION_MAX: f64 = 1e-2;

/// Box figure regimes: coincidence at L = 10, central flatness at L = 0.1.
pub const FIGURE1_COINCIDENCE_MAX: f64 = 0.02;
pub const FIGURE1_FLATNESS_MAX: f64 = 0.1;

/// Superposed box figure: pairwise curve separation relative to the peak.
pub const FIGURE2_SEPARATION_MIN: f64 = 1e-3;

/// Unit-area columns integrate to one within this.
pub const UNIT_AREA_TOLERANCE: f64 = 1e-6;

/// Dirac correspondence on exact plane-wave content and on the box state.
pub const DIRAC_PLANE_WAVE_MAX: f64 = 1e-12;
pub const DIRAC_BOX_MAX: f64 = 1e-8;

/// Continuity residual ratio per halving of `dt` (second order ⇒ 4).
pub const CONTINUITY_RATIO_MIN: f64 = 3.5;
pub const CONTINUITY_RATIO_MAX: f64 = 4.5;

/// Continuity residual of the evolving box state (spin-1/2, dt = 1e-4).
pub const CONTINUITY_BOX_MAX: f64 = 1e-6;

/// Fast separated paths against the generic pair sum.
pub const ORACLE_EQUIVALENCE_MAX: f64 = 1e-10;

/// Truncated series (k_max = 20) against the spectral Hamiltonian on states
/// band-limited to |p| ≤ 0.5.
pub const SERIES_GAP_MAX: f64 = 1e-8;
pub const SERIES_K_MAX: usize = 20;
pub const SERIES_BAND: f64 = 0.5;

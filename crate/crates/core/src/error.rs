use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate interval: x_max ({x_max}) must exceed x_min ({x_min})")]
    DegenerateInterval { x_min: f64, x_max: f64 },

    #[error("grid point count {0} must be a power of two and at least 4")]
    InvalidPointCount(usize),

    #[error("expected {expected} samples, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("symbol is not finite at momentum p = {momentum}")]
    NonFiniteSymbol { momentum: f64 },

    #[error("box [0, {width}] is not strictly inside the grid [{x_min}, {x_max})")]
    BoxOutsideGrid { width: f64, x_min: f64, x_max: f64 },

    #[error("grid padding factor {actual} is below the required {required}")]
    InsufficientPadding { required: f64, actual: f64 },

    #[error("box width must be positive and finite, got {0}")]
    InvalidBoxWidth(f64),

    #[error("quantum number must be at least 1, got {0}")]
    InvalidQuantumNumber(u32),

    #[error("momentum spread must be positive and finite, got {0}")]
    InvalidMomentumSpread(f64),

    #[error("gaussian packet leaks past the {boundary} (relative tail {tail:e})")]
    PacketLeak { boundary: &'static str, tail: f64 },

    #[error("series does not converge: spectral mass fraction {fraction:e} at |p| >= 1")]
    SeriesDivergence { fraction: f64 },

    #[error("kernel {kernel} is singular at (p1, p2) = ({p1}, {p2})")]
    KernelSingularity { kernel: String, p1: f64, p2: f64 },

    #[error("momenta {0} and {1} coincide")]
    CoincidentMomenta(f64, f64),

    #[error("superposition needs at least one term")]
    EmptySuperposition,

    #[error("non-finite {what}: {value}")]
    NonFinite { what: &'static str, value: f64 },

    #[error("boost velocity must satisfy |v| < 1, got {0}")]
    InvalidVelocity(f64),

    #[error("state has zero total probability")]
    ZeroState,

    #[error("time step must be positive and finite, got {0}")]
    InvalidTimeStep(f64),

    #[error("at least one event is required")]
    NoEvents,

    #[error("unknown kernel `{0}` (expected born, scalar, spinhalf or literal:<n>)")]
    UnknownKernel(String),
}

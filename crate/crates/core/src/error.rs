use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("Bloch vector undefined at k = {k}: quasienergy gap closes (sin ω_k = {sin_omega:e})")]
    DegeneratePoint { k: f64, sin_omega: f64 },

    #[error("parameters are gapless (θ = {theta}); the invariant needs θ ∉ {{0, π}}")]
    GaplessParameters { theta: f64 },

    #[error("point ({x}, {y}, {z}) lies on the excluded great circle (XY projection {projection:e})")]
    OnExcludedCircle { x: f64, y: f64, z: f64, projection: f64 },

    #[error("sgn(θ) is undefined at θ = 0")]
    UndefinedSign,

    #[error("rotated curve passes through the winding axis at k = {k} (projection {projection:e})")]
    CurveHitsAxis { k: f64, projection: f64 },

    #[error("Bloch vector at k = {k} is not a pole ±n_β (distance {distance:e})")]
    PoleMismatch { k: f64, distance: f64 },

    #[error("walks belong to different (δ, α, β) families")]
    MixedFamilies,

    #[error("k-grid of {grid} points is too coarse: angle step {step} exceeds π/2")]
    GridTooCoarse { grid: usize, step: f64 },

    #[error("ring size {n} must be even and at least 4")]
    OddRing { n: usize },

    #[error("α = {alpha} is not a lattice momentum 2πm/N on a ring of N = {n} sites")]
    IncommensurateAlpha { alpha: f64, n: usize },

    #[error("chiral symmetry is only defined for β = 0 (got β = {beta})")]
    BetaNonzero { beta: f64 },

    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ring of N = {n} sites exceeds the dense limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("ring of N = {n} sites is too small: {reason}")]
    RingTooSmall { n: usize, reason: String },

    #[error("walk operator does not match the interface: {0}")]
    SpecMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("output error: {0}")]
    Output(String),
}

impl Error {
    /// True for failures that indicate a broken numerical contract rather than
    /// bad input. These map to exit code 3 in the command-line tool.
    pub fn is_contract_violation(&self) -> bool {
        matches!(
            self,
            Error::PoleMismatch { .. }
                | Error::GridTooCoarse { .. }
                | Error::CurveHitsAxis { .. }
                | Error::OnExcludedCircle { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Output(e.to_string())
    }
}

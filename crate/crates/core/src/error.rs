use thiserror::Error;

/// Failures raised by the model, wall and evolution routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A rational expression hit (or came within round-off of) one of its poles.
    #[error("degenerate denominator in {quantity}: {value:e}")]
    DegenerateDenominator { quantity: &'static str, value: f64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid spacing {spacing} does not resolve wall steepness b = {b} (need <= {limit})")]
    GridTooCoarse { spacing: f64, b: f64, limit: f64 },

    /// The coefficient of the field acceleration vanished.
    #[error("singular mass matrix at t = {t}: F_X + 2 X F_XX = {coefficient:e}")]
    SingularMassMatrix { t: f64, coefficient: f64 },

    #[error("potential vanishes at phi = {phi}; V_phi / V is undefined")]
    VanishingPotential { phi: f64 },

    #[error("step failure at t = {t}: {reason}")]
    StepFailure { t: f64, reason: String },

    #[error("fit domain: {0}")]
    FitDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;

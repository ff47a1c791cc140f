//! Pure-kinetic k-essence cosmology.
//!
//! The crate evaluates the model `p = V(phi) F(X)` with the quadratic kinetic
//! function `F = F0 + F2 (X - X0)^2`, models the tanh soliton/antisoliton wall
//! pair, integrates the homogeneous field equation on a prescribed FRW
//! background and labels the resulting cosmological regime.
//!
//! All quantities are dimensionless (natural units).

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod evolution;
pub mod model;
pub mod regime;
pub mod wall;

pub use error::{Error, Result};
pub use evolution::{
    evolve_full, evolve_kinetic_only, fit_scaling, invariant_q, slow_roll_metric, BackgroundSpec,
    FieldState, ScalingFit, StepControl, Trajectory, TrajectoryRow,
};
pub use model::{CsMode, KineticModel, PotentialSpec, ScalingSolution};
pub use regime::{classify_regime, Regime, RegimeLabel};
pub use wall::{GridSpec, ProfileSample, SharpnessReport, WallProfile};

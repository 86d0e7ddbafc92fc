//! Entanglement and squeezing dynamics of two linearly coupled boson modes
//! prepared in displaced thermal states.
//!
//! The pipeline is: [`model`] (parameters, normal modes, propagator) →
//! [`gaussian`] (Wigner coefficients and covariance matrix) → [`metrics`]
//! (logarithmic negativity, squeezing) → [`control`] (time series, sweeps,
//! critical occupation, coupling optimisation). [`cli`] wraps it for the
//! command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod control;
pub mod error;
pub mod gaussian;
pub mod metrics;
pub mod model;
pub mod numerics;

pub use error::{Error, Result};
pub use gaussian::{CovarianceState, InitialState, WignerCoeffs};
pub use metrics::{EntanglementReport, SqueezingReport};
pub use model::{ModelParams, NormalModes, PropagatorCoeffs, StabilityClass};

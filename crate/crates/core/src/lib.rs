//! Decoherence of a non-interacting qubit pair coupled to chaotic
//! environments drawn from the Gaussian Unitary Ensemble.
//!
//! * [`rmt`]: GUE sampling, eigendecomposition, spectral diagnostics.
//! * [`qstate`]: initial states, purity, Wootters concurrence, Werner states.
//! * [`dynamics`]: exact evolution of the pair with a spectator qubit or two
//!   independent environments.
//! * [`theory`]: linear-response and exponentiated purity decay, and the
//!   Werner-curve concurrence prediction.
//! * [`ensemble`]: deterministic, parallel Monte Carlo averaging and result
//!   files.
//! * [`validate`]: independent reference computations.
//! * [`cli`]: the `bellpair` command-line front end.
//!
//! Time is measured in units where the environment Heisenberg time is `2π`.

#![forbid(unsafe_code)]
// `!(x >= 0.0)` style guards are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod ensemble;
pub mod error;
pub mod qstate;
pub mod rmt;
pub mod theory;
pub mod validate;

pub use error::{Error, Result};

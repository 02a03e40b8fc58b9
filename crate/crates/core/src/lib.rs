//! Closed-loop planar pushing with models learned from a handful of pushes.
//!
//! The crate is organised bottom-up:
//!
//! * [`se2`]: planar rigid transforms and the weighted configuration distance.
//! * [`plant`]: a quasi-static pusher-slider simulator that plays the robot.
//! * [`model`]: Gaussian-process forward/inverse transition models and their
//!   online, ε-separated dataset.
//! * [`mpc`]: sampling model-predictive control over perturbed rollouts.
//! * [`executor`]: turning `(α, β)` controls into pusher motions, including
//!   the smoothed re-approach.
//! * [`harness`]: reference trajectories, the closed-loop episode, MAE,
//!   sweeps and file I/O.

pub mod error;
pub mod executor;
pub mod harness;
pub mod model;
pub mod mpc;
pub mod plant;
pub mod se2;

pub use error::{Error, Result};
pub use se2::{distance, wrap_angle, DistanceWeights, Perturbation, Pose2};

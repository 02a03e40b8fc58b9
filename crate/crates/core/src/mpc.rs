//! Sampling model-predictive control over perturbed model rollouts.
//!
//! Each rollout repeatedly finds the nearest reference waypoint, asks the
//! inverse model for a control reaching the next waypoint (after perturbing
//! the desired motion with a small random transform) and propagates the
//! predicted pose with the forward model. The first control of the rollout
//! whose poses stay closest to the reference is executed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Control, MotionModel};
use crate::se2::{distance, DistanceWeights, Perturbation, Pose2};

/// Ordered waypoints `Y₁..Y_M` (stored zero-based).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceTrajectory {
    waypoints: Vec<Pose2>,
}

impl ReferenceTrajectory {
    pub fn new(waypoints: Vec<Pose2>) -> Result<Self> {
        if waypoints.is_empty() {
            return Err(Error::Config("reference trajectory needs at least one waypoint".into()));
        }
        if let Some(i) = waypoints.windows(2).position(|w| w[0] == w[1]) {
            return Err(Error::Config(format!("waypoints {i} and {} coincide", i + 1)));
        }
        Ok(Self { waypoints })
    }

    pub fn waypoints(&self) -> &[Pose2] {
        &self.waypoints
    }

    pub fn len(&self) -> usize {
        self.waypoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    pub fn last(&self) -> &Pose2 {
        self.waypoints.last().expect("non-empty by construction")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MpcConfig {
    /// Prediction horizon L.
    pub horizon: usize,
    /// Number of simulated rollouts Q; zero means greedy inverse-model control.
    pub rollouts: usize,
    pub perturbation: Perturbation,
    pub perturbation_mode: PerturbationMode,
    pub weights: DistanceWeights,
}

/// How often a rollout draws its perturbation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationMode {
    /// One perturbation per rollout, applied at every step of the horizon.
    #[default]
    PerRollout,
    /// A fresh perturbation at every step.
    PerStep,
}

impl Default for MpcConfig {
    fn default() -> Self {
        Self {
            horizon: 20,
            rollouts: 50,
            perturbation: Perturbation::default(),
            perturbation_mode: PerturbationMode::default(),
            weights: DistanceWeights::default(),
        }
    }
}

/// Index of the waypoint closest to `x`; ties go to the larger index.
pub fn nearest_waypoint(x: &Pose2, traj: &ReferenceTrajectory, w: &DistanceWeights) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, y) in traj.waypoints().iter().enumerate() {
        let d = distance(x, y, w);
        if d <= best_d {
            best_d = d;
            best = j;
        }
    }
    best
}

/// Body motion from `x` to the waypoint after `nearest`, clamped at the last one.
pub fn desired_motion(x: &Pose2, traj: &ReferenceTrajectory, nearest: usize) -> Pose2 {
    let target = (nearest + 1).min(traj.len() - 1);
    x.relative_motion(&traj.waypoints()[target])
}

/// Sum over `k = 1..L` of the distance from each predicted pose to its nearest waypoint.
pub fn rollout_cost(poses: &[Pose2], traj: &ReferenceTrajectory, w: &DistanceWeights) -> f64 {
    poses
        .iter()
        .skip(1)
        .map(|x| {
            traj.waypoints()
                .iter()
                .map(|y| distance(y, x, w))
                .fold(f64::INFINITY, f64::min)
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Rollout {
    /// `X̂₀..X̂_L`, with `X̂₀` the current pose.
    pub poses: Vec<Pose2>,
    pub first_control: Control,
    pub cost: f64,
}

/// Simulates one perturbed rollout of `config.horizon` steps.
pub fn simulate_rollout<M: MotionModel + ?Sized, R: Rng + ?Sized>(
    models: &M,
    start: &Pose2,
    traj: &ReferenceTrajectory,
    config: &MpcConfig,
    rng: &mut R,
) -> Rollout {
    let horizon = config.horizon.max(1);
    let mut poses = Vec::with_capacity(horizon + 1);
    poses.push(*start);
    let mut first = None;
    let mut x = *start;
    let mut xi = config.perturbation.sample(rng);
    for k in 0..horizon {
        if k > 0 && config.perturbation_mode == PerturbationMode::PerStep {
            xi = config.perturbation.sample(rng);
        }
        let j = nearest_waypoint(&x, traj, &config.weights);
        let g = desired_motion(&x, traj, j);
        let u = models.predict_inverse(&g.compose(&xi));
        first.get_or_insert(u);
        x = x.compose(&models.predict_forward(&u));
        poses.push(x);
    }
    let cost = rollout_cost(&poses, traj, &config.weights);
    Rollout {
        poses,
        first_control: first.expect("horizon is at least one"),
        cost,
    }
}

/// Greedy control: the inverse model applied to the unperturbed desired motion.
pub fn greedy_control<M: MotionModel + ?Sized>(
    models: &M,
    x: &Pose2,
    traj: &ReferenceTrajectory,
    weights: &DistanceWeights,
) -> Control {
    let j = nearest_waypoint(x, traj, weights);
    models.predict_inverse(&desired_motion(x, traj, j))
}

/// A planning result with every simulated rollout kept for inspection.
#[derive(Debug, Clone)]
pub struct Plan {
    pub control: Control,
    /// Index of the selected rollout, `None` for greedy control.
    pub selected: Option<usize>,
    pub rollouts: Vec<Rollout>,
}

/// Runs the sampling MPC and returns the control to execute.
///
/// Rollout `q` draws its perturbations from a ChaCha stream seeded with the
/// `q`-th `u64` of `rng`, so results are independent of scheduling and the
/// first `q` rollouts of a larger batch coincide with a smaller batch.
pub fn plan_detailed<M: MotionModel + ?Sized, R: Rng + ?Sized>(
    models: &M,
    x: &Pose2,
    traj: &ReferenceTrajectory,
    config: &MpcConfig,
    rng: &mut R,
) -> Plan {
    if config.rollouts == 0 {
        return Plan {
            control: greedy_control(models, x, traj, &config.weights),
            selected: None,
            rollouts: Vec::new(),
        };
    }
    let seeds: Vec<u64> = (0..config.rollouts).map(|_| rng.gen()).collect();
    let rollouts: Vec<Rollout> = seeds
        .par_iter()
        .map(|&s| simulate_rollout(models, x, traj, config, &mut ChaCha8Rng::seed_from_u64(s)))
        .collect();
    let mut best = 0;
    for (q, r) in rollouts.iter().enumerate() {
        if r.cost < rollouts[best].cost {
            best = q;
        }
    }
    Plan {
        control: rollouts[best].first_control,
        selected: Some(best),
        rollouts,
    }
}

pub fn plan<M: MotionModel + ?Sized, R: Rng + ?Sized>(
    models: &M,
    x: &Pose2,
    traj: &ReferenceTrajectory,
    config: &MpcConfig,
    rng: &mut R,
) -> Control {
    plan_detailed(models, x, traj, config, rng).control
}

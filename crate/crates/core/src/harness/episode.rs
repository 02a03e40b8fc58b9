//! The closed-loop pushing episode.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::metrics::compute_mae;
use crate::error::{Error, Result};
use crate::executor::smoothened_execute;
use crate::model::{learn_models, Control, TransitionModels};
use crate::mpc::plan;
use crate::plant::Plant;
use crate::se2::{distance, Pose2};

// independent ChaCha streams drawn from one episode seed
const STREAM_LEARN: u64 = 1;
const STREAM_MPC: u64 = 2;
const STREAM_PLANT: u64 = 3;
const STREAM_TRANSFER: u64 = 4;

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    Reached,
    Budget,
}

impl Termination {
    pub fn as_str(self) -> &'static str {
        match self {
            Termination::Reached => "reached",
            Termination::Budget => "budget",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    /// 1-based push index.
    pub step: usize,
    /// Object pose after the push.
    pub pose: Pose2,
    pub control: Control,
    pub smoothed: bool,
    pub miss: bool,
    pub disturbed: bool,
    /// Dataset size after the (optional) model update.
    pub dataset_size: usize,
    /// Wall-clock planning + update time in milliseconds; diagnostic only.
    pub compute_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunLog {
    pub shape: String,
    pub setting: u8,
    pub seed: u64,
    pub initial_pose: Pose2,
    pub initial_dataset_size: usize,
    pub steps: Vec<StepRecord>,
    pub mae_mm: f64,
    pub pushes: usize,
    pub termination: Termination,
}

impl RunLog {
    /// Initial pose followed by the pose after every push.
    pub fn poses(&self) -> Vec<Pose2> {
        std::iter::once(self.initial_pose)
            .chain(self.steps.iter().map(|s| s.pose))
            .collect()
    }

    pub fn reached(&self) -> bool {
        self.termination == Termination::Reached
    }
}

/// Learns models on the configured transfer object with the episode seed.
pub fn learn_transfer_models(config: &ExperimentConfig, seed: u64) -> Result<TransitionModels> {
    let shape = config.transfer_shape()?;
    let params = config.plant_params(&shape);
    let mut plant = Plant::new(shape, params, Pose2::identity())?;
    learn_models(
        &mut plant,
        config.exploration_count,
        config.model_config(),
        &mut stream(seed, STREAM_TRANSFER),
    )
}

/// Runs one episode, loading transfer models from `config.model_file` when
/// the setting needs them.
pub fn run_episode(config: &ExperimentConfig, seed: u64) -> Result<RunLog> {
    let prior = if config.setting.transfers() {
        let path = config.model_file.as_ref().ok_or_else(|| {
            Error::Config(format!(
                "setting {} transfers models but no model_file is configured",
                config.setting.number()
            ))
        })?;
        Some(TransitionModels::load(path)?)
    } else {
        None
    };
    run_episode_with_models(config, seed, prior.as_ref())
}

/// Runs one episode. `prior` supplies the transferred models for settings
/// 1 and 2 and is ignored otherwise.
pub fn run_episode_with_models(
    config: &ExperimentConfig,
    seed: u64,
    prior: Option<&TransitionModels>,
) -> Result<RunLog> {
    config.validate()?;
    let shape = config.target_shape()?;
    let params = config.plant_params(&shape);
    let traj = config.trajectory.build()?;
    let x0 = traj.waypoints()[0];
    let mut plant = Plant::new(shape, params, x0)?;
    let mut plant_rng = stream(seed, STREAM_PLANT);

    let mut models = if config.setting.transfers() {
        prior
            .cloned()
            .ok_or_else(|| Error::Config("transfer setting requires prior models".into()))?
    } else {
        let m = learn_models(
            &mut plant,
            config.exploration_count,
            config.model_config(),
            &mut stream(seed, STREAM_LEARN),
        )?;
        // exploration moved the object; put it back on the start waypoint
        plant.reset_object(x0);
        m
    };
    let initial_dataset_size = models.dataset().len();

    let mpc = config.mpc_config();
    let mut mpc_rng = stream(seed, STREAM_MPC);
    let goal = *traj.last();
    let mut steps = Vec::new();
    let mut previous: Option<Control> = None;
    let mut x = plant.object_pose();
    let mut termination = Termination::Budget;

    for step in 1..=config.max_pushes + 1 {
        if distance(&x, &goal, &config.weights) <= config.delta {
            termination = Termination::Reached;
            break;
        }
        if step > config.max_pushes {
            break;
        }
        let t0 = Instant::now();
        let u = plan(&models, &x, &traj, &mpc, &mut mpc_rng);
        let exec = smoothened_execute(&mut plant, &u, previous.as_ref(), config.sigma, &mut plant_rng);
        if config.setting.online_update() {
            models = models.update(u, &x, &exec.pose)?;
            debug_assert!(models
                .dataset()
                .min_separation()
                .is_none_or(|d| d >= models.dataset().epsilon()));
        }
        steps.push(StepRecord {
            step,
            pose: exec.pose,
            control: u,
            smoothed: exec.smoothed,
            miss: exec.missed(),
            disturbed: exec.disturbed,
            dataset_size: models.dataset().len(),
            compute_ms: t0.elapsed().as_secs_f64() * 1e3,
        });
        previous = Some(u);
        x = exec.pose;
    }

    let mut log = RunLog {
        shape: config
            .shape_file
            .as_ref()
            .map_or_else(|| config.shape.clone(), |p| p.display().to_string()),
        setting: config.setting.number(),
        seed,
        initial_pose: x0,
        initial_dataset_size,
        pushes: steps.len(),
        steps,
        mae_mm: 0.0,
        termination,
    };
    log.mae_mm = compute_mae(&log.poses(), &traj);
    Ok(log)
}

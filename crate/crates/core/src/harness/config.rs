//! Experiment configuration, read from TOML.
//!
//! Every field has a default, so an empty file describes the standard
//! benchmark: transfer from `cylinder_x` with online updates (setting 2),
//! N = 10, L = 20, Q = 50, a 0.15 m circle with 60 waypoints.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::trajectory::{gen_circle, gen_letter, gen_square};
use crate::error::{Error, Result};
use crate::model::ModelConfig;
use crate::mpc::{MpcConfig, PerturbationMode, ReferenceTrajectory};
use crate::plant::{builtin_shape, Disturbance, PlantParams, PolygonShape};
use crate::se2::{DistanceWeights, Perturbation};

/// Where the initial models come from and whether they are updated online.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum ModelSetting {
    /// Learned on the transfer object, no online update.
    TransferFrozen = 1,
    /// Learned on the transfer object, updated online.
    TransferOnline = 2,
    /// Learned on the target object, no online update.
    TargetFrozen = 3,
    /// Learned on the target object, updated online.
    TargetOnline = 4,
}

impl ModelSetting {
    pub const ALL: [ModelSetting; 4] = [
        ModelSetting::TransferFrozen,
        ModelSetting::TransferOnline,
        ModelSetting::TargetFrozen,
        ModelSetting::TargetOnline,
    ];

    pub fn transfers(self) -> bool {
        matches!(self, ModelSetting::TransferFrozen | ModelSetting::TransferOnline)
    }

    pub fn online_update(self) -> bool {
        matches!(self, ModelSetting::TransferOnline | ModelSetting::TargetOnline)
    }

    pub fn number(self) -> u8 {
        self as u8
    }
}

impl TryFrom<u8> for ModelSetting {
    type Error = String;

    fn try_from(v: u8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(ModelSetting::TransferFrozen),
            2 => Ok(ModelSetting::TransferOnline),
            3 => Ok(ModelSetting::TargetFrozen),
            4 => Ok(ModelSetting::TargetOnline),
            _ => Err(format!("model setting must be 1..=4, got {v}")),
        }
    }
}

impl From<ModelSetting> for u8 {
    fn from(s: ModelSetting) -> u8 {
        s as u8
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum TrajectorySpec {
    Circle { radius: f64, waypoints: usize },
    Square { side: f64, waypoints: usize },
    Letter { letter: char, scale: f64 },
}

impl Default for TrajectorySpec {
    fn default() -> Self {
        TrajectorySpec::Circle {
            radius: 0.15,
            waypoints: 60,
        }
    }
}

impl TrajectorySpec {
    pub fn build(&self) -> Result<ReferenceTrajectory> {
        match *self {
            TrajectorySpec::Circle { radius, waypoints } => gen_circle(radius, waypoints),
            TrajectorySpec::Square { side, waypoints } => gen_square(side, waypoints),
            TrajectorySpec::Letter { letter, scale } => gen_letter(letter, scale),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MpcSection {
    pub horizon: usize,
    pub rollouts: usize,
    pub perturbation_trans: f64,
    pub perturbation_rot: f64,
    pub perturbation_mode: PerturbationMode,
}

impl Default for MpcSection {
    fn default() -> Self {
        let p = Perturbation::default();
        Self {
            horizon: 20,
            rollouts: 50,
            perturbation_trans: p.trans_mag,
            perturbation_rot: p.rot_mag,
            perturbation_mode: PerturbationMode::default(),
        }
    }
}

/// Overrides of the per-shape plant defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlantSection {
    pub limit_surface_c: Option<f64>,
    pub contact_friction_mu: Option<f64>,
    pub pusher_radius: Option<f64>,
    pub integration_step: Option<f64>,
    pub motion_epsilon: Option<f64>,
    pub push_distance: Option<f64>,
    /// Virtual circle radius; defaults to circumradius + `virtual_circle_margin`.
    pub virtual_circle_r: Option<f64>,
    pub virtual_circle_margin: Option<f64>,
    pub disturbance: Option<Disturbance>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    pub epsilon: f64,
    pub forward_lengthscales: [f64; 3],
    pub forward_noise_std: [f64; 3],
    pub inverse_rotation_scale: f64,
    pub inverse_lengthscales: [f64; 3],
    pub inverse_noise_std: [f64; 3],
    pub signal_std_floor: f64,
}

impl Default for ModelSection {
    fn default() -> Self {
        let m = ModelConfig::default();
        Self {
            epsilon: m.epsilon,
            forward_lengthscales: m.forward_lengthscales,
            forward_noise_std: m.forward_noise_std,
            inverse_rotation_scale: m.inverse_rotation_scale,
            inverse_lengthscales: m.inverse_lengthscales,
            inverse_noise_std: m.inverse_noise_std,
            signal_std_floor: m.signal_std_floor,
        }
    }
}

/// Grid axes for `sweep`; absent axes stay at the base configuration's value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub exploration_counts: Option<Vec<usize>>,
    pub rollouts: Option<Vec<usize>>,
    pub horizons: Option<Vec<usize>>,
    pub settings: Option<Vec<ModelSetting>>,
    /// Shapes to average over; defaults to the four target shapes.
    pub shapes: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Builtin target shape name.
    pub shape: String,
    /// TOML polygon file; overrides `shape` when set.
    pub shape_file: Option<PathBuf>,
    /// Object the transferred models are learned on.
    pub transfer_shape: String,
    pub setting: ModelSetting,
    /// Exploratory pushes N used to learn the initial models.
    pub exploration_count: usize,
    /// Serialized transfer models, required by settings 1 and 2 on the CLI.
    pub model_file: Option<PathBuf>,
    /// Termination threshold on the weighted distance to the last waypoint.
    pub delta: f64,
    /// Control distance under which execution is smoothed.
    pub sigma: f64,
    pub max_pushes: usize,
    pub seeds: Vec<u64>,
    pub weights: DistanceWeights,
    pub mpc: MpcSection,
    pub model: ModelSection,
    pub plant: PlantSection,
    pub trajectory: TrajectorySpec,
    pub sweep: SweepSection,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            shape: "square_block".into(),
            shape_file: None,
            transfer_shape: "cylinder_x".into(),
            setting: ModelSetting::TransferOnline,
            exploration_count: 10,
            model_file: None,
            delta: 0.01,
            sigma: 0.3,
            max_pushes: 500,
            seeds: vec![1, 2, 3, 4, 5],
            weights: DistanceWeights::default(),
            mpc: MpcSection::default(),
            model: ModelSection::default(),
            plant: PlantSection::default(),
            trajectory: TrajectorySpec::default(),
            sweep: SweepSection::default(),
        }
    }
}

impl ExperimentConfig {
    /// Parses a TOML document; relative paths inside are resolved against `base_dir`.
    pub fn from_toml_str(text: &str, base_dir: Option<&Path>) -> Result<Self> {
        let mut cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if let Some(dir) = base_dir {
            for p in [&mut cfg.shape_file, &mut cfg.model_file].into_iter().flatten() {
                if p.is_relative() {
                    *p = dir.join(&*p);
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text, path.parent())
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(Error::Config(m));
        if self.exploration_count == 0 {
            return fail("exploration_count must be at least 1".into());
        }
        if self.max_pushes == 0 {
            return fail("max_pushes must be at least 1".into());
        }
        if self.mpc.horizon == 0 {
            return fail("mpc.horizon must be at least 1".into());
        }
        if !(self.delta > 0.0) {
            return fail(format!("delta must be positive, got {}", self.delta));
        }
        if !(self.sigma >= 0.0) {
            return fail(format!("sigma must be non-negative, got {}", self.sigma));
        }
        if !(self.model.epsilon >= 0.0) {
            return fail("model.epsilon must be non-negative".into());
        }
        if DistanceWeights::new(self.weights.w_pos, self.weights.w_rot).is_none() {
            return fail(format!("invalid distance weights {:?}", self.weights));
        }
        if self.mpc.perturbation_trans < 0.0 || self.mpc.perturbation_rot < 0.0 {
            return fail("perturbation magnitudes must be non-negative".into());
        }
        if self.seeds.is_empty() {
            return fail("seeds must not be empty".into());
        }
        self.trajectory.build()?;
        Ok(())
    }

    pub fn target_shape(&self) -> Result<PolygonShape> {
        match &self.shape_file {
            Some(p) => PolygonShape::from_file(p),
            None => builtin_shape(&self.shape).ok_or_else(|| Error::Config(format!("unknown shape {:?}", self.shape))),
        }
    }

    pub fn transfer_shape(&self) -> Result<PolygonShape> {
        builtin_shape(&self.transfer_shape)
            .ok_or_else(|| Error::Config(format!("unknown transfer shape {:?}", self.transfer_shape)))
    }

    pub fn plant_params(&self, shape: &PolygonShape) -> PlantParams {
        let mut p = PlantParams::for_shape(shape);
        let o = &self.plant;
        if let Some(v) = o.limit_surface_c {
            p.limit_surface_c = v;
        }
        if let Some(v) = o.contact_friction_mu {
            p.contact_friction_mu = v;
        }
        if let Some(v) = o.pusher_radius {
            p.pusher_radius = v;
        }
        if let Some(v) = o.integration_step {
            p.integration_step = v;
        }
        if let Some(v) = o.motion_epsilon {
            p.motion_epsilon = v;
        }
        if let Some(v) = o.push_distance {
            p.push_distance_d = v;
        }
        if let Some(m) = o.virtual_circle_margin {
            p.virtual_circle_r = shape.circumradius() + m;
        }
        if let Some(v) = o.virtual_circle_r {
            p.virtual_circle_r = v;
        }
        p.disturbance = o.disturbance;
        p
    }

    pub fn model_config(&self) -> ModelConfig {
        let m = &self.model;
        ModelConfig {
            forward_lengthscales: m.forward_lengthscales,
            forward_noise_std: m.forward_noise_std,
            inverse_translation_scale: self.plant.push_distance.unwrap_or(0.02),
            inverse_rotation_scale: m.inverse_rotation_scale,
            inverse_lengthscales: m.inverse_lengthscales,
            inverse_noise_std: m.inverse_noise_std,
            signal_std_floor: m.signal_std_floor,
            epsilon: m.epsilon,
        }
    }

    pub fn mpc_config(&self) -> MpcConfig {
        MpcConfig {
            horizon: self.mpc.horizon,
            rollouts: self.mpc.rollouts,
            perturbation: Perturbation {
                trans_mag: self.mpc.perturbation_trans,
                rot_mag: self.mpc.perturbation_rot,
            },
            perturbation_mode: self.mpc.perturbation_mode,
            weights: self.weights,
        }
    }
}

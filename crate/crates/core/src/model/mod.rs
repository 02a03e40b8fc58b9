//! Non-parametric forward and inverse transition models.
//!
//! Both models are regressed from the same dataset of `(control, body
//! motion)` pairs with domain and codomain swapped. The forward model maps
//! `(cos α, sin α, β)` to `(Δx, Δy, Δφ)`; the inverse model maps the scaled
//! motion `(Δx/d, Δy/d, Δφ/0.2)` back to `(cos α, sin α, β)`.

pub mod control;
pub mod dataset;
pub mod gp;

use std::path::Path;

use log::warn;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use control::{control_distance, featurize_control, Control, BETA_MAX};
pub use dataset::{Dataset, MotionSample};
pub use gp::{GpConfig, GpRegressor};

use crate::error::{Error, Result};
use crate::executor;
use crate::plant::Plant;
use crate::se2::{wrap_angle, Pose2};

/// Anything that can predict body motions from controls and back.
///
/// The controller only needs these two maps; implementations must be safe
/// to query concurrently.
pub trait MotionModel: Sync {
    fn predict_forward(&self, u: &Control) -> Pose2;
    fn predict_inverse(&self, g: &Pose2) -> Control;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    /// Lengthscales on `(cos α, sin α, β)`.
    pub forward_lengthscales: [f64; 3],
    /// Noise std of `(Δx [m], Δy [m], Δφ [rad])`.
    pub forward_noise_std: [f64; 3],
    /// Translation scale of the inverse-model inputs (the push distance), meters.
    pub inverse_translation_scale: f64,
    /// Rotation scale of the inverse-model inputs, radians.
    pub inverse_rotation_scale: f64,
    pub inverse_lengthscales: [f64; 3],
    pub inverse_noise_std: [f64; 3],
    pub signal_std_floor: f64,
    /// Control-distance threshold below which old samples are replaced.
    pub epsilon: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            forward_lengthscales: [0.5, 0.5, 0.1],
            forward_noise_std: [0.001, 0.001, 0.01],
            inverse_translation_scale: 0.02,
            inverse_rotation_scale: 1.0,
            inverse_lengthscales: [3.0, 3.0, 0.5],
            inverse_noise_std: [0.02, 0.02, 0.02],
            signal_std_floor: 1e-4,
            epsilon: 0.1,
        }
    }
}

impl ModelConfig {
    fn forward_gp(&self) -> GpConfig {
        GpConfig {
            lengthscales: self.forward_lengthscales.to_vec(),
            noise_std: self.forward_noise_std.to_vec(),
            signal_std_floor: self.signal_std_floor,
        }
    }

    fn inverse_gp(&self) -> GpConfig {
        GpConfig {
            lengthscales: self.inverse_lengthscales.to_vec(),
            noise_std: self.inverse_noise_std.to_vec(),
            signal_std_floor: self.signal_std_floor,
        }
    }

    /// Inverse-model input features of a body motion.
    pub fn scale_motion(&self, g: &Pose2) -> [f64; 3] {
        [
            g.x / self.inverse_translation_scale,
            g.y / self.inverse_translation_scale,
            g.theta / self.inverse_rotation_scale,
        ]
    }
}

/// Forward and inverse GPs fitted on one dataset.
#[derive(Debug, Clone)]
pub struct TransitionModels {
    config: ModelConfig,
    dataset: Dataset,
    forward: GpRegressor,
    inverse: GpRegressor,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    config: ModelConfig,
    samples: Vec<MotionSample>,
}

impl TransitionModels {
    /// Regresses both models from `dataset`.
    pub fn fit(dataset: Dataset, config: ModelConfig) -> Result<Self> {
        let samples = dataset.samples();
        let fx: Vec<Vec<f64>> = samples.iter().map(|s| featurize_control(&s.control).to_vec()).collect();
        let motions: Vec<Vec<f64>> = samples
            .iter()
            .map(|s| vec![s.motion.x, s.motion.y, s.motion.theta])
            .collect();
        let forward = GpRegressor::fit(&fx, &motions, &config.forward_gp())?;
        let scaled: Vec<Vec<f64>> = samples.iter().map(|s| config.scale_motion(&s.motion).to_vec()).collect();
        let inverse = GpRegressor::fit(&scaled, &fx, &config.inverse_gp())?;
        Ok(Self {
            config,
            dataset,
            forward,
            inverse,
        })
    }

    pub fn config(&self) -> &ModelConfig {
        &self.config
    }

    pub fn dataset(&self) -> &Dataset {
        &self.dataset
    }

    pub fn forward_regressor(&self) -> &GpRegressor {
        &self.forward
    }

    pub fn inverse_regressor(&self) -> &GpRegressor {
        &self.inverse
    }

    /// Replaces every sample whose control lies within ε of `u`, appends the
    /// observed motion `before⁻¹ · after`, and refits both models.
    pub fn update(&self, u: Control, before: &Pose2, after: &Pose2) -> Result<Self> {
        let mut dataset = self.dataset.clone();
        dataset.insert(MotionSample {
            control: u,
            motion: before.relative_motion(after),
        });
        Self::fit(dataset, self.config.clone())
    }

    /// Inverse prediction plus whether the degenerate-direction fallback fired.
    pub fn predict_inverse_detailed(&self, g: &Pose2) -> (Control, bool) {
        let out = self.inverse.predict_mean(&self.config.scale_motion(g));
        let (c, s, beta) = (out[0], out[1], out[2]);
        if c.hypot(s) < 1e-6 {
            let q = self.config.scale_motion(g);
            let nearest = self
                .dataset
                .samples()
                .iter()
                .min_by(|a, b| {
                    let da = sq_dist(&self.config.scale_motion(&a.motion), &q);
                    let db = sq_dist(&self.config.scale_motion(&b.motion), &q);
                    da.total_cmp(&db)
                })
                .expect("fitted models have at least one sample");
            warn!(
                "inverse model direction is degenerate (|(c, s)| = {:.2e}); using nearest sample alpha {:.3}",
                c.hypot(s),
                nearest.control.alpha()
            );
            return (Control::clamped(nearest.control.alpha(), beta), true);
        }
        (Control::clamped(s.atan2(c), beta), false)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(&ModelFile {
            config: self.config.clone(),
            samples: self.dataset.samples().to_vec(),
        })
        .map_err(|e| Error::Parse {
            what: "model file",
            message: e.to_string(),
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            what: "model file",
            message: e.to_string(),
        })?;
        let mut dataset = Dataset::new(file.config.epsilon);
        for s in file.samples {
            dataset.insert(s);
        }
        Self::fit(dataset, file.config)
    }

    /// The same samples refitted under a different configuration, e.g. when
    /// transferring to a plant with another push distance.
    pub fn with_config(&self, config: ModelConfig) -> Result<Self> {
        let mut dataset = Dataset::new(config.epsilon);
        for s in self.dataset.samples() {
            dataset.insert(*s);
        }
        Self::fit(dataset, config)
    }
}

fn sq_dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()
}

impl MotionModel for TransitionModels {
    fn predict_forward(&self, u: &Control) -> Pose2 {
        let out = self.forward.predict_mean(&featurize_control(u));
        Pose2::new(out[0], out[1], wrap_angle(out[2]))
    }

    fn predict_inverse(&self, g: &Pose2) -> Control {
        self.predict_inverse_detailed(g).0
    }
}

/// Samples `n` controls uniformly over `α ∈ [0, 2π)`, `β ∈ [-0.2, 0.2]`.
pub fn sample_control<R: Rng + ?Sized>(rng: &mut R) -> Control {
    let alpha = rng.gen_range(0.0..std::f64::consts::TAU);
    let beta = rng.gen_range(-BETA_MAX..=BETA_MAX);
    Control::clamped(alpha, beta)
}

/// Collects `n` exploratory pushes with uniformly random controls and fits
/// both models on the observed body motions.
///
/// Missed pushes are recorded like any other observation.
pub fn learn_models<R: Rng + ?Sized>(
    plant: &mut Plant,
    n: usize,
    config: ModelConfig,
    rng: &mut R,
) -> Result<TransitionModels> {
    if n == 0 {
        return Err(Error::Config("exploration count N must be at least 1".into()));
    }
    let mut dataset = Dataset::new(config.epsilon);
    for _ in 0..n {
        let u = sample_control(rng);
        let before = plant.object_pose();
        let out = executor::execute(plant, &u, rng);
        dataset.insert(MotionSample {
            control: u,
            motion: before.relative_motion(&out.pose),
        });
    }
    TransitionModels::fit(dataset, config)
}

// Shared oracles and fixtures for the integration tests.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_push::executor::{execute, push_geometry_body, smoothed_start};
use planar_push::model::{Control, GpConfig, MotionModel, BETA_MAX};
use planar_push::plant::{builtin_shape, Plant, PlantParams};
use planar_push::se2::wrap_angle;
use planar_push::Pose2;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_pose<R: Rng>(rng: &mut R) -> Pose2 {
    Pose2::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI),
    )
}

pub fn random_control<R: Rng>(rng: &mut R) -> Control {
    Control::new(
        rng.gen_range(0.0..std::f64::consts::TAU),
        rng.gen_range(-BETA_MAX..=BETA_MAX),
    )
    .unwrap()
}

/// Posterior mean through a dense LU solve of `(K + σₙ²I) w = y − ȳ`,
/// independent of the crate's Cholesky path.
pub fn dense_posterior_mean(
    inputs: &[Vec<f64>],
    targets: &[f64],
    lengthscales: &[f64],
    signal_var: f64,
    noise_var: f64,
    query: &[f64],
) -> f64 {
    let n = inputs.len();
    let k = |a: &[f64], b: &[f64]| {
        let s: f64 = a
            .iter()
            .zip(b)
            .zip(lengthscales)
            .map(|((x, y), l)| ((x - y) / l).powi(2))
            .sum();
        signal_var * (-0.5 * s).exp()
    };
    let mean = targets.iter().sum::<f64>() / n as f64;
    let a = DMatrix::from_fn(n, n, |i, j| k(&inputs[i], &inputs[j]) + if i == j { noise_var } else { 0.0 });
    let y = DVector::from_iterator(n, targets.iter().map(|t| t - mean));
    let w = a.lu().solve(&y).expect("oracle system is regular");
    mean + (0..n).map(|i| k(query, &inputs[i]) * w[i]).sum::<f64>()
}

/// Per-output signal variance used by the regressor: the floored population variance.
pub fn signal_var(ys: &[f64], floor: f64) -> f64 {
    let n = ys.len() as f64;
    let m = ys.iter().sum::<f64>() / n;
    let v = ys.iter().map(|y| (y - m).powi(2)).sum::<f64>() / n;
    v.sqrt().max(floor).powi(2)
}

pub fn gp_config(input_dim: usize, output_dim: usize, lengthscale: f64, noise_std: f64) -> GpConfig {
    GpConfig {
        lengthscales: vec![lengthscale; input_dim],
        noise_std: vec![noise_std; output_dim],
        signal_std_floor: 1e-4,
    }
}

/// Angle between the line through `P → P'` and the push direction of `u`,
/// together with `‖P'‖ − r`. `None` when the construction is degenerate.
pub fn law_of_sines_errors(u: &Control, radius: f64, r: f64) -> Option<(f64, f64)> {
    let p_prime = smoothed_start(u, radius, r, 0.0)?;
    let (p, dir) = push_geometry_body(u, radius);
    let seg = [p_prime[0] - p[0], p_prime[1] - p[1]];
    let len = seg[0].hypot(seg[1]);
    let angle = if len == 0.0 {
        0.0
    } else {
        let cross = seg[0] * dir[1] - seg[1] * dir[0];
        let dot = seg[0] * dir[0] + seg[1] * dir[1];
        wrap_angle(cross.atan2(dot).abs()).abs()
    };
    Some((angle, p_prime[0].hypot(p_prime[1]) - r))
}

/// The plant's own physics exposed as a motion model.
///
/// Forward prediction executes the control on a fresh copy of the plant at
/// the origin. The inverse is a simple analytic rule: push from the side
/// opposite the desired translation, tilted toward the desired rotation.
pub struct GroundTruth {
    pub plant: Plant,
}

impl GroundTruth {
    pub fn new(shape: &str) -> Self {
        let shape = builtin_shape(shape).unwrap();
        let params = PlantParams::for_shape(&shape);
        Self {
            plant: Plant::new(shape, params, Pose2::identity()).unwrap(),
        }
    }
}

impl MotionModel for GroundTruth {
    fn predict_forward(&self, u: &Control) -> Pose2 {
        let mut plant = self.plant.clone();
        plant.reset_object(Pose2::identity());
        execute(&mut plant, u, &mut rng(0)).pose
    }

    fn predict_inverse(&self, g: &Pose2) -> Control {
        let alpha = (-g.y).atan2(-g.x);
        Control::clamped(alpha, -2.0 * g.theta)
    }
}

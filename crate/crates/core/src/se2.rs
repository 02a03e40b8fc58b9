//! Planar rigid-body transforms.
//!
//! Poses are stored as `(x, y, theta)` rather than as homogeneous matrices;
//! the heading is kept normalized to `(-π, π]` by every constructor.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use serde::{Deserialize, Serialize};

/// Wraps an angle into the half-open interval `(-π, π]`.
///
/// Values already inside the interval are returned unchanged, which makes
/// the function exactly idempotent.
pub fn wrap_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let mut r = theta.rem_euclid(TAU);
    if r > PI {
        r -= TAU;
    }
    if r <= -PI {
        r += TAU;
    }
    r
}

/// An element of SE(2): planar position in meters and heading in radians.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose2 {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl Default for Pose2 {
    fn default() -> Self {
        Self::identity()
    }
}

impl Pose2 {
    #[inline]
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        Self {
            x,
            y,
            theta: wrap_angle(theta),
        }
    }

    #[inline]
    pub const fn identity() -> Self {
        Self {
            x: 0.0,
            y: 0.0,
            theta: 0.0,
        }
    }

    /// Group product `self · other`: `other` is expressed in the frame of `self`.
    #[inline]
    pub fn compose(&self, other: &Pose2) -> Pose2 {
        let (s, c) = self.theta.sin_cos();
        Pose2::new(
            self.x + c * other.x - s * other.y,
            self.y + s * other.x + c * other.y,
            self.theta + other.theta,
        )
    }

    #[inline]
    pub fn inverse(&self) -> Pose2 {
        let (s, c) = self.theta.sin_cos();
        Pose2::new(
            -(c * self.x + s * self.y),
            s * self.x - c * self.y,
            -self.theta,
        )
    }

    /// Body-frame motion taking `self` to `to`, i.e. `self⁻¹ · to`.
    #[inline]
    pub fn relative_motion(&self, to: &Pose2) -> Pose2 {
        self.inverse().compose(to)
    }

    /// Maps a point given in this pose's frame into the parent frame.
    #[inline]
    pub fn transform_point(&self, p: [f64; 2]) -> [f64; 2] {
        let (s, c) = self.theta.sin_cos();
        [self.x + c * p[0] - s * p[1], self.y + s * p[0] + c * p[1]]
    }

    /// Maps a parent-frame point into this pose's frame.
    #[inline]
    pub fn inverse_transform_point(&self, p: [f64; 2]) -> [f64; 2] {
        let (s, c) = self.theta.sin_cos();
        let dx = p[0] - self.x;
        let dy = p[1] - self.y;
        [c * dx + s * dy, -s * dx + c * dy]
    }

    /// Rotates a direction vector from this frame into the parent frame.
    #[inline]
    pub fn rotate_vector(&self, v: [f64; 2]) -> [f64; 2] {
        let (s, c) = self.theta.sin_cos();
        [c * v[0] - s * v[1], s * v[0] + c * v[1]]
    }

    #[inline]
    pub fn inverse_rotate_vector(&self, v: [f64; 2]) -> [f64; 2] {
        let (s, c) = self.theta.sin_cos();
        [c * v[0] + s * v[1], -s * v[0] + c * v[1]]
    }

    /// Euclidean norm of the translational part.
    #[inline]
    pub fn translation_norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Homogeneous 3×3 matrix, row-major.
    pub fn to_matrix(&self) -> [[f64; 3]; 3] {
        let (s, c) = self.theta.sin_cos();
        [[c, -s, self.x], [s, c, self.y], [0.0, 0.0, 1.0]]
    }

    /// Exponential map of a body twist `(v_x, v_y, ω)` integrated over unit time.
    pub fn exp(vx: f64, vy: f64, omega: f64) -> Pose2 {
        if omega.abs() < 1e-9 {
            // second-order series keeps the small-angle branch continuous
            let half = 0.5 * omega;
            return Pose2::new(vx - half * vy, vy + half * vx, omega);
        }
        let a = omega.sin() / omega;
        let b = 2.0 * (0.5 * omega).sin().powi(2) / omega;
        Pose2::new(a * vx - b * vy, b * vx + a * vy, omega)
    }
}

/// Weights of the configuration distance: meters per meter for position,
/// meters per radian for heading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceWeights {
    pub w_pos: f64,
    pub w_rot: f64,
}

impl Default for DistanceWeights {
    fn default() -> Self {
        Self {
            w_pos: 1.0,
            w_rot: 0.05,
        }
    }
}

impl DistanceWeights {
    pub fn new(w_pos: f64, w_rot: f64) -> Option<Self> {
        (w_pos > 0.0 && w_rot >= 0.0 && w_pos.is_finite() && w_rot.is_finite())
            .then_some(Self { w_pos, w_rot })
    }
}

/// Weighted sum of the positional Euclidean distance and the wrapped heading difference.
#[inline]
pub fn distance(a: &Pose2, b: &Pose2, w: &DistanceWeights) -> f64 {
    w.w_pos * (a.x - b.x).hypot(a.y - b.y) + w.w_rot * wrap_angle(a.theta - b.theta).abs()
}

/// Magnitudes of the random rigid perturbation applied to desired motions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Perturbation {
    /// Radius of the translation disc, meters.
    pub trans_mag: f64,
    /// Half-width of the rotation interval, radians.
    pub rot_mag: f64,
}

impl Default for Perturbation {
    fn default() -> Self {
        Self {
            trans_mag: 0.005,
            rot_mag: 0.05,
        }
    }
}

impl Perturbation {
    pub const ZERO: Perturbation = Perturbation {
        trans_mag: 0.0,
        rot_mag: 0.0,
    };

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Pose2 {
        sample_perturbation(rng, self.trans_mag, self.rot_mag)
    }
}

/// Draws a pose with translation uniform on the disc of radius `trans_mag`
/// and rotation uniform on `[-rot_mag, rot_mag]`.
///
/// Both draws are always taken so the RNG stream advances identically
/// regardless of the magnitudes.
pub fn sample_perturbation<R: Rng + ?Sized>(rng: &mut R, trans_mag: f64, rot_mag: f64) -> Pose2 {
    let u: f64 = rng.gen();
    let phi: f64 = rng.gen::<f64>() * TAU;
    let v: f64 = rng.gen::<f64>() * 2.0 - 1.0;
    if trans_mag == 0.0 && rot_mag == 0.0 {
        return Pose2::identity();
    }
    let rho = trans_mag * u.sqrt();
    Pose2::new(rho * phi.cos(), rho * phi.sin(), rot_mag * v)
}

//! Executes `(α, β)` controls on the plant.
//!
//! A full execution teleports the pusher to the point `P` at angle α on the
//! virtual circle and pushes toward the object center tilted by β. The
//! smoothed execution skips the retreat: when consecutive controls are
//! similar, the pusher jumps to a point `P'` at its current distance `r`
//! from the object origin that lies on the same push line, found with the
//! law of sines.

use log::debug;
use rand::Rng;

use crate::model::{control_distance, Control};
use crate::plant::{first_contact_along, closest_boundary_point, Plant, PushStatus};
use crate::se2::Pose2;

/// Result of one control execution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Execution {
    pub pose: Pose2,
    pub status: PushStatus,
    pub smoothed: bool,
    /// The smoothed path was requested but geometry forced a full execution.
    pub fell_back: bool,
    pub disturbed: bool,
}

impl Execution {
    pub fn missed(&self) -> bool {
        self.status == PushStatus::Missed
    }
}

/// Start point `P` (spatial) and unit push direction for control `u` on an
/// object at `pose` with virtual circle radius `radius`.
pub fn push_geometry(pose: &Pose2, u: &Control, radius: f64) -> ([f64; 2], [f64; 2]) {
    let (p_body, dir_body) = push_geometry_body(u, radius);
    (pose.transform_point(p_body), pose.rotate_vector(dir_body))
}

/// Body-frame version of [`push_geometry`].
pub fn push_geometry_body(u: &Control, radius: f64) -> ([f64; 2], [f64; 2]) {
    let (sa, ca) = u.alpha().sin_cos();
    // toward the center is angle α + π; β rotates it counter-clockwise
    let (sd, cd) = (u.alpha() + std::f64::consts::PI + u.beta()).sin_cos();
    ([radius * ca, radius * sa], [cd, sd])
}

/// The re-approach point `P'` in the body frame: radius `r`, angle
/// `γ = α + β − asin(R sin β / r)`. `None` when the construction is degenerate.
pub fn smoothed_start(u: &Control, radius: f64, r: f64, min_r: f64) -> Option<[f64; 2]> {
    if !(r >= min_r) {
        return None;
    }
    let ratio = radius * u.beta().sin() / r;
    if ratio.abs() > 1.0 {
        return None;
    }
    let gamma = u.alpha() + u.beta() - ratio.asin();
    Some([r * gamma.cos(), r * gamma.sin()])
}

/// Full execution: pusher to `P`, then push along the β-tilted direction.
pub fn execute<R: Rng + ?Sized>(plant: &mut Plant, u: &Control, rng: &mut R) -> Execution {
    let pose = plant.object_pose();
    let (start, dir) = push_geometry(&pose, u, plant.params().virtual_circle_r);
    let rep = plant.execute_push(start, dir, rng);
    if rep.status == PushStatus::Missed {
        debug!("push ({:.3}, {:.3}) missed the object", u.alpha(), u.beta());
    }
    Execution {
        pose: rep.state.object_pose,
        status: rep.status,
        smoothed: false,
        fell_back: false,
        disturbed: rep.disturbed,
    }
}

/// Smoothed execution of `u` given the previously executed control.
///
/// Falls back to [`execute`] when there is no previous control, when the
/// controls differ by at least `sigma`, or when the law-of-sines
/// construction is degenerate.
pub fn smoothened_execute<R: Rng + ?Sized>(
    plant: &mut Plant,
    u: &Control,
    previous: Option<&Control>,
    sigma: f64,
    rng: &mut R,
) -> Execution {
    let Some(prev) = previous else {
        return execute(plant, u, rng);
    };
    if control_distance(prev, u) >= sigma {
        return execute(plant, u, rng);
    }
    let pose = plant.object_pose();
    let radius = plant.params().virtual_circle_r;
    let pusher_radius = plant.params().pusher_radius;
    let pusher = pose.inverse_transform_point(plant.state().pusher_position);
    let r = pusher[0].hypot(pusher[1]);
    let Some(p_prime) = smoothed_start(u, radius, r, pusher_radius + 1e-6) else {
        debug!("smoothed start degenerate at r = {r:.4}; executing from the virtual circle");
        let mut out = execute(plant, u, rng);
        out.fell_back = true;
        return out;
    };
    let (p, _) = push_geometry_body(u, radius);
    let seg = [p_prime[0] - p[0], p_prime[1] - p[1]];
    let len = seg[0].hypot(seg[1]);
    let dir = if len > 1e-12 {
        [seg[0] / len, seg[1] / len]
    } else {
        push_geometry_body(u, radius).1
    };

    // P' may lie inside a non-circular object; start from the last clear point on P→P'
    let mut start = p_prime;
    if closest_boundary_point(plant.shape(), p_prime).signed_distance < pusher_radius {
        let t = first_contact_along(plant.shape(), p, dir, pusher_radius).unwrap_or(0.0);
        start = [p[0] + t * dir[0], p[1] + t * dir[1]];
    }
    let rep = plant.execute_push(pose.transform_point(start), pose.rotate_vector(dir), rng);
    Execution {
        pose: rep.state.object_pose,
        status: rep.status,
        smoothed: true,
        fell_back: false,
        disturbed: rep.disturbed,
    }
}

//! Ground-truth quasi-static pushing simulator.
//!
//! The plant stands in for a robot and a pose tracker: it receives a pusher
//! start point and direction, integrates the pusher-slider contact along the
//! straight-line pusher path and reports the resulting object pose. Nothing
//! in the controller looks inside it.

pub mod contact;
pub mod dynamics;
pub mod shape;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use contact::{closest_boundary_point, contact_query, first_contact_along, BoundaryPoint, Contact};
pub use dynamics::{quasi_static_twist, ContactMode, Twist};
pub use shape::{builtin_shape, builtin_shapes, PolygonShape, TARGET_SHAPES};

use crate::error::{Error, Result};
use crate::se2::{sample_perturbation, Pose2};

/// Random pose kicks applied to the object after a push.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disturbance {
    pub trans_mag: f64,
    pub rot_mag: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantParams {
    /// Torque-to-force ratio of the ellipsoidal limit surface, meters.
    pub limit_surface_c: f64,
    pub contact_friction_mu: f64,
    pub pusher_radius: f64,
    /// Pusher micro-step, meters.
    pub integration_step: f64,
    /// Accumulated object displacement that counts as "the object moved".
    pub motion_epsilon: f64,
    /// Pusher travel after motion detection, meters.
    pub push_distance_d: f64,
    pub virtual_circle_r: f64,
    pub disturbance: Option<Disturbance>,
}

impl PlantParams {
    /// Default parameters with a virtual circle 6 cm outside the shape's circumradius.
    ///
    /// `c` = 3 cm is close to the mean distance from the centroid of the
    /// builtin targets, the uniform-pressure value.
    pub fn for_shape(shape: &PolygonShape) -> Self {
        Self {
            limit_surface_c: 0.03,
            contact_friction_mu: 0.3,
            pusher_radius: 0.008,
            integration_step: 0.0005,
            motion_epsilon: 0.0002,
            push_distance_d: 0.02,
            virtual_circle_r: shape.circumradius() + 0.06,
            disturbance: None,
        }
    }

    pub fn validate(&self, shape: &PolygonShape) -> Result<()> {
        let lengths = [
            ("limit_surface_c", self.limit_surface_c),
            ("pusher_radius", self.pusher_radius),
            ("integration_step", self.integration_step),
            ("motion_epsilon", self.motion_epsilon),
            ("push_distance_d", self.push_distance_d),
            ("virtual_circle_r", self.virtual_circle_r),
        ];
        for (name, v) in lengths {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParams(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.contact_friction_mu >= 0.0) {
            return Err(Error::InvalidParams("contact_friction_mu must be non-negative".into()));
        }
        let min_r = shape.circumradius() + self.pusher_radius;
        if self.virtual_circle_r <= min_r {
            return Err(Error::InvalidParams(format!(
                "virtual_circle_r {} must exceed circumradius + pusher_radius = {min_r}",
                self.virtual_circle_r
            )));
        }
        if let Some(d) = &self.disturbance {
            if !(0.0..=1.0).contains(&d.probability) || d.trans_mag < 0.0 || d.rot_mag < 0.0 {
                return Err(Error::InvalidParams(format!("bad disturbance {d:?}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlantState {
    pub object_pose: Pose2,
    /// Pusher center in the spatial frame.
    pub pusher_position: [f64; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PushStatus {
    /// The pusher travelled the full push distance after the object started moving.
    Completed,
    /// The object never moved.
    Missed,
    /// The object moved but the pusher lost it before completing the push.
    TravelLimit,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PushReport {
    pub status: PushStatus,
    pub state: PlantState,
    /// Total pusher travel along the push line, meters.
    pub pusher_travel: f64,
    pub disturbed: bool,
}

/// A simulated object on a table together with the pusher.
#[derive(Debug, Clone)]
pub struct Plant {
    shape: PolygonShape,
    params: PlantParams,
    state: PlantState,
    friction_center: [f64; 2],
}

impl Plant {
    /// Places the object at `pose` with the pusher parked on the far side of
    /// the virtual circle.
    pub fn new(shape: PolygonShape, params: PlantParams, pose: Pose2) -> Result<Self> {
        params.validate(&shape)?;
        let park = pose.transform_point([2.0 * params.virtual_circle_r, 0.0]);
        let friction_center = shape.centroid();
        Ok(Self {
            shape,
            params,
            state: PlantState {
                object_pose: pose,
                pusher_position: park,
            },
            friction_center,
        })
    }

    pub fn shape(&self) -> &PolygonShape {
        &self.shape
    }

    pub fn params(&self) -> &PlantParams {
        &self.params
    }

    pub fn state(&self) -> &PlantState {
        &self.state
    }

    pub fn object_pose(&self) -> Pose2 {
        self.state.object_pose
    }

    /// Repositions the object, e.g. after exploratory pushes; the pusher is parked away.
    pub fn reset_object(&mut self, pose: Pose2) {
        self.state = PlantState {
            object_pose: pose,
            pusher_position: pose.transform_point([2.0 * self.params.virtual_circle_r, 0.0]),
        };
    }

    /// Signed clearance between the pusher disc and the object (negative when overlapping).
    pub fn pusher_clearance(&self) -> f64 {
        let q = self
            .state
            .object_pose
            .inverse_transform_point(self.state.pusher_position);
        closest_boundary_point(&self.shape, q).signed_distance - self.params.pusher_radius
    }

    /// Body twist about the object origin for the pusher at body point `q`
    /// moving along body direction `u`, or `None` if there is no approaching contact.
    fn origin_twist(&self, q: [f64; 2], u: [f64; 2]) -> Option<Twist> {
        let c = contact_query(&self.shape, q, self.params.pusher_radius)?;
        if contact::dot(u, c.inward_normal) <= 1e-12 {
            return None;
        }
        let rel = [
            c.point[0] - self.friction_center[0],
            c.point[1] - self.friction_center[1],
        ];
        let (tw, _) = quasi_static_twist(
            rel,
            c.inward_normal,
            u,
            self.params.limit_surface_c,
            self.params.contact_friction_mu,
        )
        .ok()?;
        Some(tw.shift_reference([-self.friction_center[0], -self.friction_center[1]]))
    }

    /// Teleports the pusher to `start` and drives it along the unit vector
    /// `direction` (both spatial).
    ///
    /// The push is integrated in the object's initial body frame, so the
    /// resulting body motion does not depend on where the object sits.
    pub fn execute_push<R: Rng + ?Sized>(
        &mut self,
        start: [f64; 2],
        direction: [f64; 2],
        rng: &mut R,
    ) -> PushReport {
        let x0 = self.state.object_pose;
        let norm = direction[0].hypot(direction[1]);
        let dir_s = [direction[0] / norm, direction[1] / norm];
        let p0 = x0.inverse_transform_point(start);
        let dir = x0.inverse_rotate_vector(dir_s);

        let (rel, p_end, status, travel) = self.integrate(p0, dir);

        let mut pose = x0.compose(&rel);
        let mut pusher = x0.transform_point(p_end);
        let mut disturbed = false;
        if let Some(d) = self.params.disturbance {
            let hit = rng.gen::<f64>() < d.probability;
            let kick = sample_perturbation(rng, d.trans_mag, d.rot_mag);
            if hit {
                pose = pose.compose(&kick);
                disturbed = true;
                pusher = self.clear_pusher(pose, pusher, dir_s);
            }
        }
        self.state = PlantState {
            object_pose: pose,
            pusher_position: pusher,
        };
        PushReport {
            status,
            state: self.state,
            pusher_travel: travel,
            disturbed,
        }
    }

    /// Retracts the pusher backwards along `dir` until it no longer overlaps
    /// an object at `pose`.
    fn clear_pusher(&self, pose: Pose2, pusher: [f64; 2], dir: [f64; 2]) -> [f64; 2] {
        let q = pose.inverse_transform_point(pusher);
        let sep = closest_boundary_point(&self.shape, q).signed_distance - self.params.pusher_radius;
        if sep >= 0.0 {
            return pusher;
        }
        let back = 4.0 * self.params.virtual_circle_r;
        let u = pose.inverse_rotate_vector(dir);
        let from = [q[0] - back * u[0], q[1] - back * u[1]];
        match first_contact_along(&self.shape, from, u, self.params.pusher_radius) {
            Some(t) => pose.transform_point([from[0] + t * u[0], from[1] + t * u[1]]),
            None => pose.transform_point(from),
        }
    }

    /// Integrates one push in the frame where the object starts at identity.
    /// Returns the relative object motion, final pusher point, status and travel.
    fn integrate(&self, start: [f64; 2], dir: [f64; 2]) -> (Pose2, [f64; 2], PushStatus, f64) {
        let prm = &self.params;
        let max_travel = 4.0 * prm.virtual_circle_r;
        let d = prm.push_distance_d;
        let mut obj = Pose2::identity();
        let mut p = start;
        let mut total = 0.0;
        let mut counted = 0.0;
        let mut moved = 0.0;
        let mut counting = false;
        let mut ever_moved = false;

        let advance = |p: &mut [f64; 2], h: f64| {
            p[0] += h * dir[0];
            p[1] += h * dir[1];
        };

        loop {
            if counting && counted >= d {
                return (obj, p, PushStatus::Completed, total);
            }
            let mut remaining = max_travel - total;
            if counting {
                remaining = remaining.min(d - counted);
            }
            if remaining <= 1e-12 {
                break;
            }
            let q = obj.inverse_transform_point(p);
            let u = obj.inverse_rotate_vector(dir);
            let Some(tw) = self.origin_twist(q, u) else {
                // free flight: jump to the next approaching contact, or step
                // off a separating one
                let touching = contact_query(&self.shape, q, prm.pusher_radius).is_some();
                let h = if touching {
                    prm.integration_step.min(remaining)
                } else {
                    match first_contact_along(&self.shape, q, u, prm.pusher_radius) {
                        Some(t) if t < remaining => t.max(1e-12),
                        _ => remaining,
                    }
                };
                advance(&mut p, h);
                total += h;
                if counting {
                    counted += h;
                }
                continue;
            };

            let h = prm.integration_step.min(remaining);
            // explicit midpoint rule on the contact dynamics
            let half = obj.compose(&Pose2::exp(tw.vx * 0.5 * h, tw.vy * 0.5 * h, tw.omega * 0.5 * h));
            let mut p_half = p;
            advance(&mut p_half, 0.5 * h);
            let tw_mid = self
                .origin_twist(half.inverse_transform_point(p_half), half.inverse_rotate_vector(dir))
                .unwrap_or(tw);
            let mut next = obj.compose(&Pose2::exp(tw_mid.vx * h, tw_mid.vy * h, tw_mid.omega * h));
            let mut p_next = p;
            advance(&mut p_next, h);

            // resolve residual interpenetration by pushing the object out along the normal
            let bp = closest_boundary_point(&self.shape, next.inverse_transform_point(p_next));
            let depth = prm.pusher_radius - bp.signed_distance;
            if depth > 0.0 {
                let n = next.rotate_vector(bp.inward_normal);
                next.x += depth * n[0];
                next.y += depth * n[1];
            }

            let disp = (next.x - obj.x).hypot(next.y - obj.y);
            if disp > 0.0 {
                ever_moved = true;
            }
            if counting {
                counted += h;
            } else if moved + disp > prm.motion_epsilon {
                counting = true;
                counted = h * (moved + disp - prm.motion_epsilon) / disp;
            }
            moved += disp;
            total += h;
            obj = next;
            p = p_next;
        }
        let status = if counting && counted >= d - 1e-12 {
            PushStatus::Completed
        } else if ever_moved {
            PushStatus::TravelLimit
        } else {
            PushStatus::Missed
        };
        (obj, p, status, total)
    }
}

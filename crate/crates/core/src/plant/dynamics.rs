//! Single-point quasi-static pusher-slider model on an ellipsoidal limit surface.
//!
//! Coordinates are relative to the center of friction. With limit surface
//! constant `c`, a contact force `f` applied at `p` produces the body twist
//! `(f_x, f_y, (p × f) / c²)` up to scale.

use serde::{Deserialize, Serialize};

use super::contact::dot;
use crate::error::{Error, Result};

/// Body twist per unit pusher travel: linear velocity of the reference point
/// and angular rate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Twist {
    pub vx: f64,
    pub vy: f64,
    pub omega: f64,
}

impl Twist {
    pub fn scaled(&self, k: f64) -> Twist {
        Twist {
            vx: self.vx * k,
            vy: self.vy * k,
            omega: self.omega * k,
        }
    }

    /// Velocity of body point `p` under this twist.
    pub fn point_velocity(&self, p: [f64; 2]) -> [f64; 2] {
        [self.vx - self.omega * p[1], self.vy + self.omega * p[0]]
    }

    /// The same rigid motion expressed about a reference point shifted by `offset`.
    pub fn shift_reference(&self, offset: [f64; 2]) -> Twist {
        let v = self.point_velocity(offset);
        Twist {
            vx: v[0],
            vy: v[1],
            omega: self.omega,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContactMode {
    Stick,
    Slide,
}

fn twist_for_force(p: [f64; 2], f: [f64; 2], c2: f64) -> Twist {
    Twist {
        vx: f[0],
        vy: f[1],
        omega: (p[0] * f[1] - p[1] * f[0]) / c2,
    }
}

/// Object twist produced by a point pusher at `contact` (relative to the
/// center of friction) moving with `velocity`.
///
/// `inward_normal` is the unit contact normal pointing into the object. The
/// sticking solution is used when its implied contact force lies inside the
/// friction cone of half-angle `atan(mu)`; otherwise the force is placed on the
/// nearer cone edge and the twist is scaled so the normal component of the
/// contact-point velocity equals the pusher's.
pub fn quasi_static_twist(
    contact: [f64; 2],
    inward_normal: [f64; 2],
    velocity: [f64; 2],
    limit_surface_c: f64,
    mu: f64,
) -> Result<(Twist, ContactMode)> {
    let normal_speed = dot(velocity, inward_normal);
    if normal_speed <= 0.0 {
        return Err(Error::SeparatingContact { normal_speed });
    }
    let [xc, yc] = contact;
    let [ux, uy] = velocity;
    let c2 = limit_surface_c * limit_surface_c;
    let den = c2 + xc * xc + yc * yc;
    let vx = ((c2 + xc * xc) * ux + xc * yc * uy) / den;
    let vy = (xc * yc * ux + (c2 + yc * yc) * uy) / den;
    let stick = Twist {
        vx,
        vy,
        omega: (xc * vy - yc * vx) / c2,
    };

    // the stick force is parallel to the linear velocity of the friction center
    let f_norm = vx.hypot(vy);
    let f_n = (vx * inward_normal[0] + vy * inward_normal[1]) / f_norm;
    let f_t = (inward_normal[0] * vy - inward_normal[1] * vx) / f_norm;
    let half_angle = mu.atan();
    if f_t.atan2(f_n).abs() <= half_angle {
        return Ok((stick, ContactMode::Stick));
    }

    let edge_angle = half_angle.copysign(f_t);
    let (s, co) = edge_angle.sin_cos();
    let f = [
        co * inward_normal[0] - s * inward_normal[1],
        s * inward_normal[0] + co * inward_normal[1],
    ];
    let dir = twist_for_force(contact, f, c2);
    let contact_normal_speed = dot(dir.point_velocity(contact), inward_normal);
    Ok((dir.scaled(normal_speed / contact_normal_speed), ContactMode::Slide))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn centered_push_translates() {
        let (t, mode) = quasi_static_twist([-0.05, 0.0], [1.0, 0.0], [1.0, 0.0], 0.05, 0.3).unwrap();
        assert_eq!(mode, ContactMode::Stick);
        assert_abs_diff_eq!(t.vx, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.vy, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(t.omega, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn push_through_friction_center_copies_velocity() {
        let (t, _) = quasi_static_twist([0.0, 0.0], [0.6, 0.8], [0.6, 0.8], 0.05, 0.3).unwrap();
        assert_abs_diff_eq!(t.vx, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(t.vy, 0.8, epsilon = 1e-15);
        assert_eq!(t.omega, 0.0);
    }

    #[test]
    fn offset_push_regression() {
        // Values evaluated independently from the closed-form sticking twist:
        // den = 0.0054, vx = 0.005/den, vy = -0.001/den,
        // omega = (xc*vy - yc*vx)/c^2; force angle atan(0.2) < atan(0.3).
        let (t, mode) = quasi_static_twist([-0.05, 0.02], [1.0, 0.0], [1.0, 0.0], 0.05, 0.3).unwrap();
        assert_eq!(mode, ContactMode::Stick);
        assert_abs_diff_eq!(t.vx, 0.925_925_925_925_925_9, epsilon = 1e-12);
        assert_abs_diff_eq!(t.vy, -0.185_185_185_185_185_2, epsilon = 1e-12);
        assert_abs_diff_eq!(t.omega, -3.703_703_703_703_703_5, epsilon = 1e-12);
    }

    #[test]
    fn stick_contact_point_follows_pusher() {
        let p = [-0.03, 0.01];
        let n = [0.96, -0.28];
        let u = [0.9, 0.1];
        let (t, mode) = quasi_static_twist(p, n, u, 0.05, 1.0).unwrap();
        assert_eq!(mode, ContactMode::Stick);
        let v = t.point_velocity(p);
        assert_abs_diff_eq!(v[0], u[0], epsilon = 1e-12);
        assert_abs_diff_eq!(v[1], u[1], epsilon = 1e-12);
    }

    #[test]
    fn slide_matches_normal_speed_and_cone_edge() {
        // steep approach angle forces sliding
        let p = [-0.04, 0.03];
        let n = [1.0, 0.0];
        let u = [0.6, 0.8];
        let (t, mode) = quasi_static_twist(p, n, u, 0.05, 0.2).unwrap();
        assert_eq!(mode, ContactMode::Slide);
        let v = t.point_velocity(p);
        assert_abs_diff_eq!(v[0], u[0], epsilon = 1e-12);
        // implied force on the cone edge
        let ang = t.vy.atan2(t.vx);
        assert_abs_diff_eq!(ang.abs(), 0.2f64.atan(), epsilon = 1e-12);
    }

    #[test]
    fn separating_velocity_is_rejected() {
        let err = quasi_static_twist([-0.05, 0.0], [1.0, 0.0], [-1.0, 0.0], 0.05, 0.3);
        assert!(matches!(err, Err(Error::SeparatingContact { .. })));
    }

    #[test]
    fn large_limit_surface_translates() {
        let (t, _) = quasi_static_twist([-0.05, 0.03], [1.0, 0.0], [1.0, 0.1], 1e3, 0.5).unwrap();
        assert!(t.omega.abs() < 1e-6);
    }

    #[test]
    fn shifted_reference_preserves_motion() {
        let t = Twist { vx: 0.3, vy: -0.2, omega: 2.0 };
        let s = t.shift_reference([0.01, 0.02]);
        let q = [0.04, -0.03];
        let a = t.point_velocity(q);
        let b = s.point_velocity([q[0] - 0.01, q[1] - 0.02]);
        assert_abs_diff_eq!(a[0], b[0], epsilon = 1e-15);
        assert_abs_diff_eq!(a[1], b[1], epsilon = 1e-15);
    }
}

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::se2::wrap_angle;

/// Largest push offset angle magnitude, radians.
pub const BETA_MAX: f64 = 0.2;

/// A push expressed in the object body frame.
///
/// `alpha` picks the start point on the virtual circle and lies in `[0, 2π)`;
/// `beta` tilts the approach direction away from the circle center
/// (positive is counter-clockwise) and lies in `[-0.2, 0.2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Control {
    alpha: f64,
    beta: f64,
}

fn wrap_positive(alpha: f64) -> f64 {
    let a = alpha.rem_euclid(TAU);
    if a >= TAU {
        0.0
    } else {
        a
    }
}

impl Control {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidControl(format!("non-finite ({alpha}, {beta})")));
        }
        if beta.abs() > BETA_MAX {
            return Err(Error::InvalidControl(format!("|beta| = {} exceeds {BETA_MAX}", beta.abs())));
        }
        Ok(Self {
            alpha: wrap_positive(alpha),
            beta,
        })
    }

    /// Like [`Control::new`] but clamps `beta` into range instead of failing.
    pub fn clamped(alpha: f64, beta: f64) -> Self {
        Self {
            alpha: wrap_positive(alpha),
            beta: beta.clamp(-BETA_MAX, BETA_MAX),
        }
    }

    /// Builds a control without the range check; used by tests that need an
    /// out-of-range approach angle.
    #[doc(hidden)]
    pub fn new_unchecked(alpha: f64, beta: f64) -> Self {
        Self {
            alpha: wrap_positive(alpha),
            beta,
        }
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Embeds a control as `(cos α, sin α, β)` so that α = 0 and α = 2π coincide.
#[inline]
pub fn featurize_control(u: &Control) -> [f64; 3] {
    let (s, c) = u.alpha.sin_cos();
    [c, s, u.beta]
}

/// Euclidean distance on `(α, β)` with α differences taken modulo 2π.
#[inline]
pub fn control_distance(a: &Control, b: &Control) -> f64 {
    wrap_angle(a.alpha - b.alpha).hypot(a.beta - b.beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn construction() {
        assert!(Control::new(0.0, 0.21).is_err());
        assert!(Control::new(f64::NAN, 0.0).is_err());
        let u = Control::new(-PI / 2.0, 0.1).unwrap();
        assert_abs_diff_eq!(u.alpha(), 1.5 * PI, epsilon = 1e-15);
        assert_eq!(Control::new(TAU, 0.0).unwrap().alpha(), 0.0);
        assert_eq!(Control::clamped(1.0, -0.5).beta(), -0.2);
    }

    #[test]
    fn featurize_examples() {
        assert_eq!(featurize_control(&Control::new(0.0, 0.0).unwrap()), [1.0, 0.0, 0.0]);
        let f = featurize_control(&Control::new(PI, 0.1).unwrap());
        assert_abs_diff_eq!(f[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(f[1], 0.0, epsilon = 1e-15);
        assert_eq!(f[2], 0.1);
        let f = featurize_control(&Control::new(PI / 3.0, -0.2).unwrap());
        assert_abs_diff_eq!(f[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(f[1], 3f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(f[2], -0.2);
    }

    #[test]
    fn featurize_respects_wrap() {
        for k in 0..50 {
            let a = k as f64 * 0.13;
            let f1 = featurize_control(&Control::new(a, 0.05).unwrap());
            let f2 = featurize_control(&Control::new(a + TAU, 0.05).unwrap());
            for i in 0..3 {
                assert_abs_diff_eq!(f1[i], f2[i], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn distance_examples() {
        let u = Control::new(1.0, 0.1).unwrap();
        assert_eq!(control_distance(&u, &u), 0.0);
        let a = Control::new(0.01, 0.0).unwrap();
        let b = Control::new(TAU - 0.01, 0.0).unwrap();
        assert_abs_diff_eq!(control_distance(&a, &b), 0.02, epsilon = 1e-12);
        let c = Control::new(1.3, -0.1).unwrap();
        assert_abs_diff_eq!(control_distance(&u, &c), 0.13f64.sqrt(), epsilon = 1e-12);
        assert_eq!(control_distance(&u, &c), control_distance(&c, &u));
    }
}

//! Disc-versus-polygon proximity and swept contact, all in the object body frame.

use super::shape::PolygonShape;

#[inline]
pub(crate) fn dot(a: [f64; 2], b: [f64; 2]) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Closest point of the polygon boundary to `q` and the inward normal there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub point: [f64; 2],
    /// Unit vector pointing into the object.
    pub inward_normal: [f64; 2],
    /// Signed distance from `q` to the boundary: positive outside, negative inside.
    pub signed_distance: f64,
}

/// Contact report returned when the pusher disc touches the polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contact {
    pub point: [f64; 2],
    pub inward_normal: [f64; 2],
}

pub fn closest_boundary_point(shape: &PolygonShape, q: [f64; 2]) -> BoundaryPoint {
    let mut best_d2 = f64::INFINITY;
    let mut best = [0.0; 2];
    let mut best_edge = 0;
    for i in 0..shape.len() {
        let (a, b) = shape.edge(i);
        let ab = sub(b, a);
        let t = (dot(sub(q, a), ab) / dot(ab, ab)).clamp(0.0, 1.0);
        let p = [a[0] + t * ab[0], a[1] + t * ab[1]];
        let d = sub(p, q);
        let d2 = dot(d, d);
        if d2 < best_d2 {
            best_d2 = d2;
            best = p;
            best_edge = i;
        }
    }
    let dist = best_d2.sqrt();
    let inside = shape.contains(q);
    let inward_normal = if dist > 1e-12 {
        let d = sub(best, q);
        let s = if inside { -1.0 } else { 1.0 };
        [s * d[0] / dist, s * d[1] / dist]
    } else {
        // on the boundary: fall back to the edge's own inward normal
        let (a, b) = shape.edge(best_edge);
        let e = sub(b, a);
        let len = e[0].hypot(e[1]);
        [-e[1] / len, e[0] / len]
    };
    BoundaryPoint {
        point: best,
        inward_normal,
        signed_distance: if inside { -dist } else { dist },
    }
}

/// Closest boundary point and inward normal when the pusher disc of radius
/// `pusher_radius` centered at `q` touches the polygon (within 1e-9 m).
pub fn contact_query(shape: &PolygonShape, q: [f64; 2], pusher_radius: f64) -> Option<Contact> {
    let bp = closest_boundary_point(shape, q);
    (bp.signed_distance <= pusher_radius + 1e-9).then_some(Contact {
        point: bp.point,
        inward_normal: bp.inward_normal,
    })
}

/// Travel distance along unit direction `dir` after which a disc of radius
/// `r` starting at `p` first touches the polygon while approaching it.
///
/// Only approaching contacts are reported; `None` means the ray clears the
/// object.
pub fn first_contact_along(shape: &PolygonShape, p: [f64; 2], dir: [f64; 2], r: f64) -> Option<f64> {
    let mut best = f64::INFINITY;
    for i in 0..shape.len() {
        let (a, b) = shape.edge(i);
        let e = sub(b, a);
        let len = e[0].hypot(e[1]);
        let outward = [e[1] / len, -e[0] / len];
        let approach = dot(dir, outward);
        if approach < -1e-15 {
            let t = (r - dot(sub(p, a), outward)) / approach;
            let hit = [p[0] + t * dir[0], p[1] + t * dir[1]];
            let s = dot(sub(hit, a), e) / (len * len);
            if (0.0..=1.0).contains(&s) && t >= -1e-12 && t < best {
                best = t.max(0.0);
            }
        }
        // vertex a as a disc of radius r
        let w = sub(p, a);
        let bq = dot(w, dir);
        let c = dot(w, w) - r * r;
        let disc = bq * bq - c;
        if disc >= 0.0 && bq < 0.0 {
            let t = -bq - disc.sqrt();
            if t >= -1e-12 && t < best {
                best = t.max(0.0);
            }
        }
    }
    best.is_finite().then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit_square() -> PolygonShape {
        PolygonShape::rectangle(1.0, 1.0).unwrap()
    }

    /// Independent oracle: dense sampling of the boundary.
    fn brute_closest(shape: &PolygonShape, q: [f64; 2]) -> ([f64; 2], f64) {
        let mut best = ([0.0; 2], f64::INFINITY);
        for i in 0..shape.len() {
            let (a, b) = shape.edge(i);
            for k in 0..=20_000 {
                let t = k as f64 / 20_000.0;
                let p = [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
                let d = (p[0] - q[0]).hypot(p[1] - q[1]);
                if d < best.1 {
                    best = (p, d);
                }
            }
        }
        best
    }

    #[test]
    fn far_pusher_has_no_contact() {
        assert!(contact_query(&unit_square(), [1.0, 0.0], 0.01).is_none());
    }

    #[test]
    fn face_contact() {
        let c = contact_query(&unit_square(), [0.505, 0.0], 0.01).unwrap();
        assert_abs_diff_eq!(c.point[0], 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.point[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.inward_normal[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c.inward_normal[1], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn vertex_contact_matches_brute_force() {
        let shape = unit_square();
        let q = [0.51, 0.51];
        let c = contact_query(&shape, q, 0.02).unwrap();
        let (p, _) = brute_closest(&shape, q);
        assert_abs_diff_eq!(c.point[0], p[0], epsilon = 1e-12);
        assert_abs_diff_eq!(c.point[1], p[1], epsilon = 1e-12);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(c.inward_normal[0], -s, epsilon = 1e-12);
        assert_abs_diff_eq!(c.inward_normal[1], -s, epsilon = 1e-12);
    }

    #[test]
    fn closest_point_random_against_brute_force() {
        let shape = crate::plant::builtin_shape("l_shape").unwrap();
        for k in 0..40 {
            let a = k as f64 * 0.37;
            let rad = 0.02 + 0.002 * k as f64;
            let q = [rad * a.cos(), rad * a.sin()];
            let bp = closest_boundary_point(&shape, q);
            let (_, d) = brute_closest(&shape, q);
            assert_abs_diff_eq!(bp.signed_distance.abs(), d, epsilon = 1e-5);
            assert_eq!(bp.signed_distance < 0.0, shape.contains(q));
        }
    }

    #[test]
    fn swept_contact_face_and_vertex() {
        let shape = unit_square();
        let t = first_contact_along(&shape, [2.0, 0.0], [-1.0, 0.0], 0.1).unwrap();
        assert_abs_diff_eq!(t, 1.4, epsilon = 1e-12);
        // diagonal approach onto the corner
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let t = first_contact_along(&shape, [1.5, 1.5], [-s, -s], 0.1).unwrap();
        assert_abs_diff_eq!(t, 2f64.sqrt() - 0.1, epsilon = 1e-12);
        assert!(first_contact_along(&shape, [2.0, 0.0], [1.0, 0.0], 0.1).is_none());
        assert!(first_contact_along(&shape, [2.0, 0.7], [-1.0, 0.0], 0.1).is_none());
    }

    #[test]
    fn swept_contact_lands_at_pusher_radius() {
        let shape = crate::plant::builtin_shape("triangle").unwrap();
        for k in 0..64 {
            let a = k as f64 * 0.1;
            let p = [0.2 * a.cos(), 0.2 * a.sin()];
            let off = 0.3 * ((k as f64) * 0.77).sin();
            let dir = [-(a + off).cos(), -(a + off).sin()];
            if let Some(t) = first_contact_along(&shape, p, dir, 0.008) {
                let hit = [p[0] + t * dir[0], p[1] + t * dir[1]];
                let bp = closest_boundary_point(&shape, hit);
                assert_abs_diff_eq!(bp.signed_distance, 0.008, epsilon = 1e-9);
            }
        }
    }
}

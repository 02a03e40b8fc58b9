use crate::mpc::ReferenceTrajectory;
use crate::se2::Pose2;

/// Distance from `p` to the segment `a`–`b`.
pub fn point_segment_distance(p: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let len2 = ab[0] * ab[0] + ab[1] * ab[1];
    let t = if len2 > 0.0 {
        (((p[0] - a[0]) * ab[0] + (p[1] - a[1]) * ab[1]) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (p[0] - a[0] - t * ab[0]).hypot(p[1] - a[1] - t * ab[1])
}

/// Positional distance from `p` to the reference polyline through consecutive waypoints.
pub fn distance_to_polyline(p: [f64; 2], traj: &ReferenceTrajectory) -> f64 {
    let w = traj.waypoints();
    if w.len() == 1 {
        return (p[0] - w[0].x).hypot(p[1] - w[0].y);
    }
    w.windows(2)
        .map(|s| point_segment_distance(p, [s[0].x, s[0].y], [s[1].x, s[1].y]))
        .fold(f64::INFINITY, f64::min)
}

/// Mean absolute positional error in millimeters of `poses` against the
/// reference polyline. Headings are ignored. Returns 0 for no poses.
pub fn compute_mae(poses: &[Pose2], traj: &ReferenceTrajectory) -> f64 {
    if poses.is_empty() {
        return 0.0;
    }
    let sum: f64 = poses.iter().map(|p| distance_to_polyline([p.x, p.y], traj)).sum();
    1000.0 * sum / poses.len() as f64
}

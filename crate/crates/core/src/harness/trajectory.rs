//! Reference trajectory generators.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::mpc::ReferenceTrajectory;
use crate::se2::Pose2;

/// `m` waypoints equally spaced counter-clockwise on a circle about the
/// origin, starting at angle 0, headings tangent to the path.
pub fn gen_circle(radius: f64, m: usize) -> Result<ReferenceTrajectory> {
    if !(radius > 0.0) || m == 0 {
        return Err(Error::Config(format!("circle needs radius > 0 and M >= 1 (got {radius}, {m})")));
    }
    ReferenceTrajectory::new(
        (0..m)
            .map(|k| {
                let phi = TAU * k as f64 / m as f64;
                Pose2::new(radius * phi.cos(), radius * phi.sin(), phi + PI / 2.0)
            })
            .collect(),
    )
}

/// Waypoints along a polyline with every corner kept as a waypoint.
///
/// `m` points are split across segments in proportion to their length
/// (largest remainder, at least one interval per segment). A closed polyline
/// omits the closing point, which coincides with the start. Headings follow
/// the segment leaving each waypoint; the final point of an open polyline
/// takes the heading of the last segment.
pub fn polyline_waypoints(corners: &[[f64; 2]], closed: bool, m: usize) -> Result<ReferenceTrajectory> {
    let mut pts: Vec<[f64; 2]> = corners.to_vec();
    if closed {
        pts.push(corners[0]);
    }
    let segs = pts.len().saturating_sub(1);
    if segs == 0 {
        return Err(Error::Config("polyline needs at least two corners".into()));
    }
    let intervals = if closed { m } else { m.saturating_sub(1) };
    if intervals < segs {
        return Err(Error::Config(format!(
            "{m} waypoints cannot cover {} corners",
            if closed { segs } else { segs + 1 }
        )));
    }
    let lens: Vec<f64> = pts.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).collect();
    if lens.iter().any(|l| *l <= 0.0) {
        return Err(Error::Config("polyline has a zero-length segment".into()));
    }
    let total: f64 = lens.iter().sum();
    let spare = intervals - segs;
    let shares: Vec<f64> = lens.iter().map(|l| spare as f64 * l / total).collect();
    let mut counts: Vec<usize> = shares.iter().map(|s| 1 + s.floor() as usize).collect();
    let mut left = intervals - counts.iter().sum::<usize>();
    let mut order: Vec<usize> = (0..segs).collect();
    order.sort_by(|&a, &b| {
        let ra = shares[a] - shares[a].floor();
        let rb = shares[b] - shares[b].floor();
        rb.total_cmp(&ra).then(a.cmp(&b))
    });
    for &i in order.iter().cycle() {
        if left == 0 {
            break;
        }
        counts[i] += 1;
        left -= 1;
    }

    let mut out = Vec::with_capacity(m);
    for (i, w) in pts.windows(2).enumerate() {
        let heading = (w[1][1] - w[0][1]).atan2(w[1][0] - w[0][0]);
        for k in 0..counts[i] {
            let t = k as f64 / counts[i] as f64;
            out.push(Pose2::new(
                w[0][0] + t * (w[1][0] - w[0][0]),
                w[0][1] + t * (w[1][1] - w[0][1]),
                heading,
            ));
        }
    }
    if !closed {
        let w = &pts[segs - 1..];
        let heading = (w[1][1] - w[0][1]).atan2(w[1][0] - w[0][0]);
        out.push(Pose2::new(w[1][0], w[1][1], heading));
    }
    ReferenceTrajectory::new(out)
}

/// Closed square of side `side` centered on the origin, starting at the
/// lower-left corner and running counter-clockwise.
pub fn gen_square(side: f64, m: usize) -> Result<ReferenceTrajectory> {
    if !(side > 0.0) {
        return Err(Error::Config(format!("square side must be positive, got {side}")));
    }
    let h = 0.5 * side;
    polyline_waypoints(&[[-h, -h], [h, -h], [h, h], [-h, h]], true, m)
}

/// Letter strokes on the unit box, drawn as a single open polyline.
pub fn letter_polyline(id: char) -> Option<&'static [[f64; 2]]> {
    const R: [[f64; 2]; 6] = [[0.0, 0.0], [0.0, 1.0], [0.7, 1.0], [0.7, 0.5], [0.0, 0.5], [0.7, 0.0]];
    const I: [[f64; 2]; 3] = [[0.5, 0.0], [0.5, 1.0], [0.5, 0.0]];
    const C: [[f64; 2]; 4] = [[1.0, 1.0], [0.0, 1.0], [0.0, 0.0], [1.0, 0.0]];
    const E: [[f64; 2]; 7] = [[1.0, 1.0], [0.0, 1.0], [0.0, 0.5], [0.7, 0.5], [0.0, 0.5], [0.0, 0.0], [1.0, 0.0]];
    match id.to_ascii_uppercase() {
        'R' => Some(&R),
        'I' => Some(&I),
        'C' => Some(&C),
        'E' => Some(&E),
        _ => None,
    }
}

/// Default spacing between letter waypoints, meters.
pub const LETTER_SPACING: f64 = 0.015;

/// Letter `id` ∈ {R, I, C, E} scaled to a `scale`-meter box with waypoints
/// roughly [`LETTER_SPACING`] apart.
pub fn gen_letter(id: char, scale: f64) -> Result<ReferenceTrajectory> {
    let stroke = letter_polyline(id).ok_or_else(|| Error::Config(format!("unknown letter {id:?}")))?;
    if !(scale > 0.0) {
        return Err(Error::Config(format!("letter scale must be positive, got {scale}")));
    }
    let pts: Vec<[f64; 2]> = stroke.iter().map(|p| [p[0] * scale, p[1] * scale]).collect();
    let len: f64 = pts.windows(2).map(|w| (w[1][0] - w[0][0]).hypot(w[1][1] - w[0][1])).sum();
    let m = ((len / LETTER_SPACING).round() as usize + 1).max(pts.len());
    polyline_waypoints(&pts, false, m)
}

// Usage: cargo run --example se2_poses
//
// Composition, inversion and the weighted pose distance.

use std::f64::consts::FRAC_PI_2;

use planar_push::se2::{distance, DistanceWeights, Pose2};

fn main() {
    let x = Pose2::new(1.0, 0.0, FRAC_PI_2);
    let step = Pose2::new(0.1, 0.0, 0.2);

    // a body-frame step taken at heading π/2 moves the object along +y
    let moved = x.compose(&step);
    println!("x · step       = {moved:?}");
    println!("x⁻¹            = {:?}", x.inverse());
    println!("relative(x, ·) = {:?}", x.relative_motion(&moved));

    let w = DistanceWeights::default();
    println!("distance       = {:.4} (w_pos {}, w_rot {})", distance(&x, &moved, &w), w.w_pos, w.w_rot);
}

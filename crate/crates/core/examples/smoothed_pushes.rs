// Usage: cargo run --example smoothed_pushes
//
// Repeats one control with and without the smoothed re-approach. The
// re-approach starts next to the object yet lands on the same poses.

use planar_push::executor::{execute, smoothened_execute};
use planar_push::model::Control;
use planar_push::plant::{builtin_shape, Plant, PlantParams};
use planar_push::Pose2;
use rand::SeedableRng;

fn main() -> planar_push::Result<()> {
    let shape = builtin_shape("rectangle").expect("builtin");
    let params = PlantParams::for_shape(&shape);
    let u = Control::new(3.0, 0.05)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);

    let mut full = Plant::new(shape.clone(), params.clone(), Pose2::identity())?;
    let mut smooth = Plant::new(shape, params, Pose2::identity())?;
    let mut previous = None;
    for k in 1..=5 {
        let a = execute(&mut full, &u, &mut rng);
        let b = smoothened_execute(&mut smooth, &u, previous.as_ref(), 0.3, &mut rng);
        previous = Some(u);
        println!(
            "push {k}: full ({:.4}, {:.4}, {:.3})  smoothed ({:.4}, {:.4}, {:.3}) {}",
            a.pose.x,
            a.pose.y,
            a.pose.theta,
            b.pose.x,
            b.pose.y,
            b.pose.theta,
            if b.smoothed { "re-approached" } else { "from the circle" }
        );
    }
    Ok(())
}

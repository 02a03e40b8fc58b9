// Usage: cargo run --example push_shapes [alpha] [beta]
//
// One push with the same control on every builtin object.

use planar_push::executor::execute;
use planar_push::model::Control;
use planar_push::plant::{builtin_shapes, Plant, PlantParams};
use planar_push::Pose2;
use rand::SeedableRng;

fn main() -> planar_push::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<f64>().expect("numeric argument"));
    let alpha = args.next().unwrap_or(0.3);
    let beta = args.next().unwrap_or(0.1);
    let u = Control::new(alpha, beta)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);

    println!("{:<14} {:>9} {:>9} {:>9}  status", "shape", "dx mm", "dy mm", "dθ rad");
    for (name, shape) in builtin_shapes() {
        let params = PlantParams::for_shape(&shape);
        let mut plant = Plant::new(shape, params, Pose2::identity())?;
        let out = execute(&mut plant, &u, &mut rng);
        let g = out.pose;
        println!(
            "{name:<14} {:>9.3} {:>9.3} {:>9.4}  {:?}",
            g.x * 1e3,
            g.y * 1e3,
            g.theta,
            out.status
        );
    }
    Ok(())
}

// Usage: cargo run --example learn_models [N] [out.json]
//
// Learns forward and inverse models from N random pushes on the cylinder,
// saves them, and compares predictions against fresh pushes.

use planar_push::executor::execute;
use planar_push::model::{learn_models, sample_control, ModelConfig, MotionModel, TransitionModels};
use planar_push::plant::{builtin_shape, Plant, PlantParams};
use planar_push::Pose2;
use rand::SeedableRng;

fn main() -> planar_push::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map_or(10, |a| a.parse().expect("N must be an integer"));
    let out = args.next();

    let shape = builtin_shape("cylinder_x").expect("builtin");
    let params = PlantParams::for_shape(&shape);
    let mut plant = Plant::new(shape, params, Pose2::identity())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let models = learn_models(&mut plant, n, ModelConfig::default(), &mut rng)?;
    println!("dataset: {} samples", models.dataset().len());

    let mut err = 0.0;
    for _ in 0..20 {
        let u = sample_control(&mut rng);
        plant.reset_object(Pose2::identity());
        let real = execute(&mut plant, &u, &mut rng).pose;
        let pred = models.predict_forward(&u);
        err += (real.x - pred.x).hypot(real.y - pred.y);
    }
    println!("mean forward error on 20 new pushes: {:.2} mm", err / 20.0 * 1e3);

    if let Some(path) = out {
        models.save(&path)?;
        let back = TransitionModels::load(&path)?;
        println!("saved to {path} and reloaded {} samples", back.dataset().len());
    }
    Ok(())
}

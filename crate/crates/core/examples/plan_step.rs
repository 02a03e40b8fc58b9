// Usage: cargo run --example plan_step [Q]
//
// One planning step: the greedy control next to the best of Q perturbed rollouts.

use planar_push::harness::gen_circle;
use planar_push::model::{learn_models, ModelConfig};
use planar_push::mpc::{greedy_control, plan_detailed, MpcConfig};
use planar_push::plant::{builtin_shape, Plant, PlantParams};
use planar_push::Pose2;
use rand::SeedableRng;

fn main() -> planar_push::Result<()> {
    let q: usize = std::env::args().nth(1).map_or(50, |a| a.parse().expect("Q must be an integer"));
    let shape = builtin_shape("cylinder_x").expect("builtin");
    let params = PlantParams::for_shape(&shape);
    let mut plant = Plant::new(shape, params, Pose2::identity())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let models = learn_models(&mut plant, 10, ModelConfig::default(), &mut rng)?;

    let traj = gen_circle(0.15, 60)?;
    let x = Pose2::new(0.155, 0.004, 1.6);
    let config = MpcConfig {
        rollouts: q,
        ..MpcConfig::default()
    };
    let greedy = greedy_control(&models, &x, &traj, &config.weights);
    println!("greedy: alpha {:.3} beta {:.3}", greedy.alpha(), greedy.beta());

    let p = plan_detailed(&models, &x, &traj, &config, &mut rng);
    if let Some(best) = p.selected {
        let costs: Vec<f64> = p.rollouts.iter().map(|r| r.cost).collect();
        let worst = costs.iter().cloned().fold(f64::MIN, f64::max);
        println!(
            "mpc:    alpha {:.3} beta {:.3} (rollout {best}, cost {:.4}, worst {:.4})",
            p.control.alpha(),
            p.control.beta(),
            costs[best],
            worst
        );
    }
    Ok(())
}

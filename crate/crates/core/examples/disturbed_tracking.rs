// Usage: cargo run --release --example disturbed_tracking [probability]
//
// Circle tracking while random pose kicks hit the object after pushes.

use planar_push::harness::{learn_transfer_models, run_episode_with_models, ExperimentConfig};
use planar_push::plant::Disturbance;

fn main() -> planar_push::Result<()> {
    let probability: f64 = std::env::args().nth(1).map_or(0.2, |a| a.parse().expect("probability"));
    let mut cfg = ExperimentConfig::default();
    cfg.plant.disturbance = Some(Disturbance {
        trans_mag: 0.005,
        rot_mag: 0.05,
        probability,
    });
    for seed in 1..=3 {
        let prior = learn_transfer_models(&cfg, seed)?;
        let log = run_episode_with_models(&cfg, seed, Some(&prior))?;
        let kicks = log.steps.iter().filter(|s| s.disturbed).count();
        println!(
            "seed {seed}: {kicks} kicks in {} pushes, {}, MAE {:.2} mm",
            log.pushes,
            log.termination.as_str(),
            log.mae_mm
        );
    }
    Ok(())
}

// Usage: cargo run --release --example track_trajectory [circle|square|R|I|C|E] [shape] [out_dir]
//
// One closed-loop episode with transferred models and online updates.

use std::path::Path;

use planar_push::harness::{export_run, learn_transfer_models, run_episode_with_models, ExperimentConfig, TrajectorySpec};

fn main() -> planar_push::Result<()> {
    let mut args = std::env::args().skip(1);
    let which = args.next().unwrap_or_else(|| "circle".into());
    let mut cfg = ExperimentConfig {
        shape: args.next().unwrap_or_else(|| "square_block".into()),
        ..ExperimentConfig::default()
    };
    cfg.trajectory = match which.as_str() {
        "circle" => TrajectorySpec::Circle {
            radius: 0.15,
            waypoints: 60,
        },
        "square" => TrajectorySpec::Square {
            side: 0.2,
            waypoints: 60,
        },
        letter => TrajectorySpec::Letter {
            letter: letter.chars().next().unwrap_or('R'),
            scale: 0.2,
        },
    };

    let seed = 1;
    let prior = learn_transfer_models(&cfg, seed)?;
    let log = run_episode_with_models(&cfg, seed, Some(&prior))?;
    println!(
        "{} on {}: {} pushes, {}, MAE {:.2} mm",
        cfg.shape,
        which,
        log.pushes,
        log.termination.as_str(),
        log.mae_mm
    );
    if let Some(dir) = args.next() {
        export_run(&log, Path::new(&dir))?;
        println!("wrote {dir}/trajectory.csv");
    }
    Ok(())
}

// Usage: cargo run --release --example rollout_sweep
//
// Mean tracking error for several rollout counts over all target shapes.

use planar_push::harness::{sweep, ExperimentConfig};

fn main() -> planar_push::Result<()> {
    let mut cfg = ExperimentConfig::default();
    cfg.sweep.rollouts = Some(vec![0, 10, 50]);
    let seeds = [1, 2, 3];
    let result = sweep(&cfg, &seeds)?;
    print!("{}", result.to_csv());
    Ok(())
}

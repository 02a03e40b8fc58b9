//! Benchmark harness: reference trajectories, the closed-loop episode,
//! the tracking metric, parameter sweeps and file export.

pub mod config;
pub mod episode;
pub mod export;
pub mod metrics;
pub mod sweep;
pub mod trajectory;

pub use config::{ExperimentConfig, ModelSetting, TrajectorySpec};
pub use episode::{learn_transfer_models, run_episode, run_episode_with_models, RunLog, StepRecord, Termination};
pub use export::{export_run, summary, to_csv, Summary, CSV_HEADER};
pub use metrics::{compute_mae, distance_to_polyline, point_segment_distance};
pub use sweep::{sweep, CellKey, SweepCell, SweepResult};
pub use trajectory::{gen_circle, gen_letter, gen_square};

//! Run-log export: a per-push CSV and a JSON summary.
//!
//! CSV format version 1. The header is fixed; row 0 is the initial pose
//! with empty control fields; a final `#` comment line carries the summary.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::episode::RunLog;
use crate::error::{Error, Result};

pub const CSV_HEADER: &str = "step,x_m,y_m,theta_rad,alpha,beta,smoothed,miss,dataset_size";
pub const CSV_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub csv_version: u32,
    pub shape: String,
    pub setting: u8,
    pub seed: u64,
    pub mae_mm: f64,
    pub pushes: usize,
    pub termination: String,
    pub misses: usize,
    pub smoothed: usize,
    pub final_dataset_size: usize,
}

pub fn summary(log: &RunLog) -> Summary {
    Summary {
        csv_version: CSV_VERSION,
        shape: log.shape.clone(),
        setting: log.setting,
        seed: log.seed,
        mae_mm: log.mae_mm,
        pushes: log.pushes,
        termination: log.termination.as_str().to_string(),
        misses: log.steps.iter().filter(|s| s.miss).count(),
        smoothed: log.steps.iter().filter(|s| s.smoothed).count(),
        final_dataset_size: log.steps.last().map_or(log.initial_dataset_size, |s| s.dataset_size),
    }
}

/// Renders the CSV. Output depends only on the log's poses and controls, so
/// identical runs give identical bytes.
pub fn to_csv(log: &RunLog) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    let p = log.initial_pose;
    let _ = writeln!(
        out,
        "0,{:.9},{:.9},{:.9},,,,,{}",
        p.x, p.y, p.theta, log.initial_dataset_size
    );
    for s in &log.steps {
        let _ = writeln!(
            out,
            "{},{:.9},{:.9},{:.9},{:.9},{:.9},{},{},{}",
            s.step,
            s.pose.x,
            s.pose.y,
            s.pose.theta,
            s.control.alpha(),
            s.control.beta(),
            s.smoothed as u8,
            s.miss as u8,
            s.dataset_size
        );
    }
    let _ = writeln!(
        out,
        "# summary,mae_mm={:.6},pushes={},termination={}",
        log.mae_mm,
        log.pushes,
        log.termination.as_str()
    );
    out
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Parse {
        what: "json output",
        message: e.to_string(),
    })
}

/// Writes `trajectory.csv` and `summary.json` into `dir`.
pub fn export_run(log: &RunLog, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    write(&dir.join("trajectory.csv"), &to_csv(log))?;
    write(&dir.join("summary.json"), &json(&summary(log))?)
}

pub fn save_run_log(log: &RunLog, path: &Path) -> Result<()> {
    write(path, &json(log)?)
}

pub fn load_run_log(path: &Path) -> Result<RunLog> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse {
        what: "run log",
        message: e.to_string(),
    })
}

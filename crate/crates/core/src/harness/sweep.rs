//! Parameter grids over settings, exploration counts, horizons and rollout counts.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, ModelSetting};
use super::episode::{learn_transfer_models, run_episode_with_models, RunLog};
use crate::error::Result;
use crate::model::TransitionModels;
use crate::plant::TARGET_SHAPES;

/// One grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellKey {
    pub setting: u8,
    pub exploration_count: usize,
    pub horizon: usize,
    pub rollouts: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub key: CellKey,
    pub episodes: usize,
    pub mean_mae_mm: f64,
    pub std_mae_mm: f64,
    pub reached: usize,
    pub mean_pushes: f64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    pub cells: Vec<SweepCell>,
    /// Every episode, keyed by cell, shape and seed.
    pub runs: BTreeMap<(CellKey, String, u64), RunLog>,
}

impl SweepResult {
    pub fn cell(&self, key: &CellKey) -> Option<&SweepCell> {
        self.cells.iter().find(|c| &c.key == key)
    }

    /// CSV table, one row per cell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("setting,n,horizon,rollouts,episodes,mean_mae_mm,std_mae_mm,reached,mean_pushes\n");
        for c in &self.cells {
            out.push_str(&format!(
                "{},{},{},{},{},{:.6},{:.6},{},{:.3}\n",
                c.key.setting,
                c.key.exploration_count,
                c.key.horizon,
                c.key.rollouts,
                c.episodes,
                c.mean_mae_mm,
                c.std_mae_mm,
                c.reached,
                c.mean_pushes
            ));
        }
        out
    }
}

/// Mean and population standard deviation.
pub fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Grid cells implied by the base configuration and its `[sweep]` section.
pub fn grid(base: &ExperimentConfig) -> Vec<CellKey> {
    let s = &base.sweep;
    let settings = s
        .settings
        .clone()
        .unwrap_or_else(|| vec![base.setting]);
    let ns = s.exploration_counts.clone().unwrap_or_else(|| vec![base.exploration_count]);
    let ls = s.horizons.clone().unwrap_or_else(|| vec![base.mpc.horizon]);
    let qs = s.rollouts.clone().unwrap_or_else(|| vec![base.mpc.rollouts]);
    let mut out = Vec::new();
    for &setting in &settings {
        for &n in &ns {
            for &horizon in &ls {
                for &rollouts in &qs {
                    out.push(CellKey {
                        setting: setting.number(),
                        exploration_count: n,
                        horizon,
                        rollouts,
                    });
                }
            }
        }
    }
    out
}

/// Configuration of a single grid cell on one shape.
pub fn cell_config(base: &ExperimentConfig, key: &CellKey, shape: &str) -> ExperimentConfig {
    let mut cfg = base.clone();
    cfg.setting = ModelSetting::try_from(key.setting).expect("grid settings are valid");
    cfg.exploration_count = key.exploration_count;
    cfg.mpc.horizon = key.horizon;
    cfg.mpc.rollouts = key.rollouts;
    cfg.shape = shape.to_string();
    cfg.shape_file = None;
    cfg
}

/// Runs every cell of the grid on every shape and seed, in parallel.
///
/// Transfer models for settings 1 and 2 come from `base.model_file` when set;
/// otherwise they are learned on the transfer object per (N, seed).
pub fn sweep(base: &ExperimentConfig, seeds: &[u64]) -> Result<SweepResult> {
    let keys = grid(base);
    let shapes: Vec<String> = base
        .sweep
        .shapes
        .clone()
        .unwrap_or_else(|| TARGET_SHAPES.iter().map(|s| s.to_string()).collect());

    let fixed_prior = match &base.model_file {
        Some(p) => Some(TransitionModels::load(p)?),
        None => None,
    };
    let mut priors: BTreeMap<(usize, u64), TransitionModels> = BTreeMap::new();
    if fixed_prior.is_none() {
        let needed: Vec<(usize, u64)> = keys
            .iter()
            .filter(|k| k.setting <= 2)
            .map(|k| k.exploration_count)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .flat_map(|n| seeds.iter().map(move |&s| (n, s)))
            .collect();
        let learned: Vec<_> = needed
            .par_iter()
            .map(|&(n, s)| {
                let mut cfg = base.clone();
                cfg.exploration_count = n;
                learn_transfer_models(&cfg, s).map(|m| ((n, s), m))
            })
            .collect::<Result<_>>()?;
        priors.extend(learned);
    }

    let jobs: Vec<(CellKey, String, u64)> = keys
        .iter()
        .flat_map(|k| {
            shapes
                .iter()
                .flat_map(move |sh| seeds.iter().map(move |&s| (*k, sh.clone(), s)))
        })
        .collect();
    let logs: Vec<((CellKey, String, u64), RunLog)> = jobs
        .into_par_iter()
        .map(|(key, shape, seed)| {
            let cfg = cell_config(base, &key, &shape);
            let prior = fixed_prior
                .as_ref()
                .or_else(|| priors.get(&(key.exploration_count, seed)));
            run_episode_with_models(&cfg, seed, prior).map(|log| ((key, shape, seed), log))
        })
        .collect::<Result<_>>()?;
    let runs: BTreeMap<_, _> = logs.into_iter().collect();

    let cells = keys
        .iter()
        .map(|key| {
            let in_cell: Vec<&RunLog> = runs.iter().filter(|((k, _, _), _)| k == key).map(|(_, v)| v).collect();
            let maes: Vec<f64> = in_cell.iter().map(|l| l.mae_mm).collect();
            let (mean, std) = mean_std(&maes);
            SweepCell {
                key: *key,
                episodes: in_cell.len(),
                mean_mae_mm: mean,
                std_mae_mm: std,
                reached: in_cell.iter().filter(|l| l.reached()).count(),
                mean_pushes: in_cell.iter().map(|l| l.pushes as f64).sum::<f64>() / in_cell.len().max(1) as f64,
            }
        })
        .collect();
    Ok(SweepResult { cells, runs })
}

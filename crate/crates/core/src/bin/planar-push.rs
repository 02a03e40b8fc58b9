//! Command-line front end for the benchmark harness.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use planar_push::harness::{self, export, ExperimentConfig};
use planar_push::Error;

#[derive(Parser)]
#[command(name = "planar-push", version, about = "Closed-loop planar pushing benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Experiment configuration (TOML). Defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output file or directory.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Learn transfer models on the configured transfer object and save them as JSON.
    Learn(Common),
    /// Run one closed-loop episode and write its run log (JSON).
    Run(Common),
    /// Run the configured grid over all seeds and write a CSV table.
    Sweep(Common),
    /// Run one episode (or read `--input`) and write trajectory.csv and summary.json.
    Export {
        #[command(flatten)]
        common: Common,
        /// Previously saved run log; when given no episode is run.
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn load_config(path: Option<&Path>) -> planar_push::Result<ExperimentConfig> {
    match path {
        Some(p) => ExperimentConfig::load(p),
        None => Ok(ExperimentConfig::default()),
    }
}

fn write(path: &Path, text: &str) -> planar_push::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

fn episode(c: &Common, cfg: &ExperimentConfig) -> planar_push::Result<harness::RunLog> {
    if cfg.setting.transfers() && cfg.model_file.is_none() {
        // no saved models: learn them with this seed
        let prior = harness::learn_transfer_models(cfg, c.seed)?;
        harness::run_episode_with_models(cfg, c.seed, Some(&prior))
    } else {
        harness::run_episode(cfg, c.seed)
    }
}

fn run(cli: Cli) -> planar_push::Result<()> {
    match cli.command {
        Command::Learn(c) => {
            let cfg = load_config(c.config.as_deref())?;
            let models = harness::learn_transfer_models(&cfg, c.seed)?;
            models.save(&c.out)?;
            println!("saved {} samples to {}", models.dataset().len(), c.out.display());
        }
        Command::Run(c) => {
            let cfg = load_config(c.config.as_deref())?;
            let log = episode(&c, &cfg)?;
            export::save_run_log(&log, &c.out)?;
            println!(
                "mae_mm={:.3} pushes={} termination={}",
                log.mae_mm,
                log.pushes,
                log.termination.as_str()
            );
        }
        Command::Sweep(c) => {
            let cfg = load_config(c.config.as_deref())?;
            // --seed offsets the configured seed list
            let seeds: Vec<u64> = cfg.seeds.iter().map(|s| s.wrapping_add(c.seed).wrapping_sub(1)).collect();
            let result = harness::sweep(&cfg, &seeds)?;
            let table = result.to_csv();
            write(&c.out, &table)?;
            print!("{table}");
        }
        Command::Export { common, input } => {
            let log = match input {
                Some(p) => export::load_run_log(&p)?,
                None => {
                    let cfg = load_config(common.config.as_deref())?;
                    episode(&common, &cfg)?
                }
            };
            harness::export_run(&log, &common.out)?;
            println!("wrote {}", common.out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) | Error::Parse { .. } | Error::InvalidParams(_) | Error::InvalidShape(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::FAILURE,
            }
        }
    }
}

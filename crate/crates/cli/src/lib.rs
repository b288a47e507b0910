//! Experiment runner: TOML configs in, deterministic tables and a manifest out.

pub mod config;
pub mod error;
pub mod experiments;
pub mod output;
pub mod provider;

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use config::ConfigFile;
pub use error::CliError;
pub use output::{Artifacts, Check};

/// Outcome of a completed run; outputs are already on disk.
#[derive(Debug)]
pub struct RunReport {
    pub out_dir: PathBuf,
    pub checks: Vec<Check>,
    pub artifacts: Artifacts,
}

impl RunReport {
    pub fn failed(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    pub fn passed(&self) -> bool {
        self.failed().is_empty()
    }
}

#[derive(Serialize)]
struct Resolved<'a> {
    source: String,
    seed: u64,
    limits: config::Limits,
    experiment: &'a [config::ExperimentConfig],
}

/// Seed of one experiment: the config seed mixed with the experiment name,
/// so that reordering experiments does not change their random draws.
pub fn experiment_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3))
}

pub fn default_out_dir(config_path: &Path) -> PathBuf {
    let stem = config_path.file_stem().map_or("run".into(), |s| s.to_string_lossy().into_owned());
    PathBuf::from("out").join(stem)
}

/// Runs every experiment of a config file. Check failures are reported in
/// the returned report; errors abort the run before anything is written.
pub fn run_config_file(path: &Path, out_override: Option<&Path>) -> Result<RunReport, CliError> {
    let cfg = ConfigFile::load(path)?;
    let out_dir = match (out_override, &cfg.output_dir) {
        (Some(o), _) => o.to_path_buf(),
        (None, Some(d)) if d.is_absolute() => d.clone(),
        (None, Some(d)) => path.parent().unwrap_or_else(|| Path::new(".")).join(d),
        (None, None) => default_out_dir(path),
    };
    run_config(&cfg, &path.display().to_string(), &out_dir)
}

pub fn run_config(cfg: &ConfigFile, source: &str, out_dir: &Path) -> Result<RunReport, CliError> {
    let limits = cfg.effective_limits()?;
    let mut artifacts = Artifacts::default();
    let mut checks = Vec::new();
    for e in &cfg.experiment {
        let mut ctx = experiments::Ctx {
            cfg: e,
            limits,
            rng: ChaCha8Rng::seed_from_u64(experiment_seed(cfg.seed, &e.name)),
            checks: Vec::new(),
            artifacts: &mut artifacts,
        };
        experiments::run(&mut ctx)?;
        checks.append(&mut ctx.checks);
    }
    let mut check_csv = String::from("experiment,check,passed\n");
    for c in &checks {
        check_csv.push_str(&format!("{},{},{}\n", c.experiment, c.name, c.passed));
    }
    artifacts.add("checks.csv", check_csv);
    let resolved = Resolved { source: source.to_string(), seed: cfg.seed, limits, experiment: &cfg.experiment };
    let manifest = output::Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        timestamp: output::unix_timestamp(),
        config: &resolved,
        checks: &checks,
        files: artifacts.paths(),
    };
    let json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Config(e.to_string()))?;
    artifacts.write_all(out_dir)?;
    output::write_atomic(&out_dir.join("manifest.json"), format!("{json}\n").as_bytes())?;
    Ok(RunReport { out_dir: out_dir.to_path_buf(), checks, artifacts })
}

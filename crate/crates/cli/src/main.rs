use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cutset_core::graph::{GraphWindow, WindowLimits};
use cutset_lab::config::{Generators, ProviderSpec, ENV_MAX_VERTICES};
use cutset_lab::{provider, run_config_file, CliError};

#[derive(Parser)]
#[command(name = "cutset-lab", version, about = "Minimal cutset experiments on windows of infinite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every experiment of a config file.
    Run {
        config: PathBuf,
        /// Output directory, overriding the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List provider families and their parameters.
    ListProviders,
    /// Print the adjacency dump (or DOT) of a window.
    DumpWindow {
        #[arg(long)]
        family: String,
        #[arg(long)]
        group: Option<String>,
        /// Preset name or comma-separated words.
        #[arg(long)]
        generators: Option<String>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        k: Option<u8>,
        #[arg(long)]
        n: Option<u8>,
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        dot: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Run { config, out } => {
            let report = run_config_file(&config, out.as_deref())?;
            for c in &report.checks {
                let status = if c.passed { "ok  " } else { "FAIL" };
                println!("{status} {}/{}: {}", c.experiment, c.name, c.detail);
            }
            println!("outputs in {}", report.out_dir.display());
            if report.passed() {
                Ok(0)
            } else {
                eprintln!("error: {} check(s) failed", report.failed().len());
                Ok(4)
            }
        }
        Command::ListProviders => {
            print!("{}", provider::list_providers());
            Ok(0)
        }
        Command::DumpWindow { family, group, generators, degree, k, n, radius, dot } => {
            let generators = generators.map(|g| {
                if g.contains(',') {
                    Generators::Words(g.split(',').map(|s| s.trim().to_string()).collect())
                } else {
                    Generators::Preset(g)
                }
            });
            let spec = ProviderSpec { family, group, generators, degree, k, n };
            let p = provider::build(&spec).map_err(CliError::Config)?;
            let mut limits = WindowLimits::default();
            if let Ok(v) = std::env::var(ENV_MAX_VERTICES) {
                limits.max_vertices =
                    v.parse().map_err(|_| CliError::Config(format!("{ENV_MAX_VERTICES}: not a number: {v:?}")))?;
            }
            let w = GraphWindow::build(p, radius, limits)?;
            print!("{}", if dot { w.to_dot() } else { w.dump_adjacency() });
            Ok(0)
        }
    }
}

//! `cra run --task <task>`: writes the task's CSV/JSON outputs into `--out`.
//! Any failure prints one JSON object on stderr and exits nonzero.

mod args;
mod config;
mod tasks;

use std::fs;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use config::{ConfigFile, RunConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] cra_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Config(String),
    #[error("{0} already exists (pass --force to overwrite)")]
    OutputExists(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Usage(_) => "UsageError",
            CliError::Config(_) => "ConfigError",
            CliError::OutputExists(_) => "OutputExists",
            CliError::Io(_) => "IoError",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let Command::Run(args) = cli.command;
    let file = match &args.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let cfg = RunConfig::resolve(&args, file)?;
    let outputs = tasks::run(&cfg)?;

    let dir = &cfg.output_dir;
    if !cfg.force {
        if let Some((name, _)) = outputs.iter().find(|(name, _)| dir.join(name).exists()) {
            return Err(CliError::OutputExists(dir.join(name).display().to_string()));
        }
    }
    fs::create_dir_all(dir)?;
    for (name, bytes) in &outputs {
        fs::write(dir.join(name), bytes)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return report(&CliError::Usage(e.kind().to_string() + ": " + first_line(&e.to_string()))),
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report(&e),
    }
}

fn first_line(s: &str) -> &str {
    s.trim_start_matches("error: ").lines().next().unwrap_or("")
}

fn report(e: &CliError) -> ExitCode {
    let line = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
    eprintln!("{line}");
    ExitCode::from(e.exit_code())
}

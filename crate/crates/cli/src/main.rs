mod args;
mod commands;
mod config;
mod error;
mod golden;
mod output;
mod spec;

use args::{Cli, Command};
use clap::Parser;
use config::ConfigFile;
use error::{CliResult, EXIT_VALIDATION};
use spec::{RunSpec, THREADS_ENV};

fn execute(cli: Cli) -> CliResult<()> {
    let mut opts = cli.opts;
    if let Some(path) = opts.config.clone() {
        ConfigFile::load(&path)?.apply(&mut opts)?;
    }
    let threads = std::env::var(THREADS_ENV).ok();
    let spec = RunSpec::new(opts, threads.as_deref())?;
    let table = match cli.command {
        Command::LstEval => commands::lst_eval::run(&spec)?,
        Command::Invert => commands::invert::run(&spec)?,
        Command::Approx => commands::approx::run(&spec)?,
        Command::Simulate => commands::simulate::run(&spec)?,
        Command::Compare => commands::compare::run(&spec)?,
        Command::Repro { table } => commands::repro::run(&spec, table)?,
    };
    output::emit(&table.render(spec.format()), spec.out())
}

fn main() {
    let json_errors = std::env::args().any(|a| a == "--json-errors");
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            std::process::exit(0);
        }
        Err(e) => {
            if json_errors {
                let err = error::CliError::validation(e.kind().to_string() + ": " + e.to_string().lines().next().unwrap_or(""));
                eprintln!("{}", err.to_json());
            } else {
                let _ = e.print();
            }
            std::process::exit(EXIT_VALIDATION);
        }
    };
    let mut json = cli.opts.json_errors || json_errors;
    if let Some(path) = &cli.opts.config {
        if let Ok(cfg) = ConfigFile::load(path) {
            json |= cfg.entries.get("json-errors").is_some_and(|(_, v)| v == "true");
        }
    }
    if let Err(e) = execute(cli) {
        if json {
            eprintln!("{}", e.to_json());
        } else {
            eprintln!("levytandem: {e}");
        }
        std::process::exit(e.kind.exit_code());
    }
}

//! `folab`: experiments on zero-one laws of sparse random graphs.
//!
//! Exit codes: 0 success, 1 other failure, 2 usage error, 3 input or parse
//! error, 4 capacity guard.

mod args;
mod commands;
mod ef;
mod output;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command, EfCommand};
use output::Sink;

/// A request the command line cannot express, detected after parsing.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<UsageError>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<folab_core::Error>() {
            return if e.is_capacity() { 4 } else { 3 };
        }
        if cause.is::<std::io::Error>() {
            return 3;
        }
    }
    1
}

fn configure_threads() -> Result<()> {
    if let Ok(text) = std::env::var("FOLAB_THREADS") {
        let n: usize = text
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("FOLAB_THREADS must be a positive integer, got `{text}`")))?;
        if n == 0 {
            return Err(UsageError("FOLAB_THREADS must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    let sink = Sink {
        format: cli.format,
        out: cli.out.clone(),
    };
    match &cli.command {
        Command::Density(a) => commands::density_cmd(a, &sink),
        Command::Pair(a) => commands::pair_cmd(a, &sink),
        Command::Scan(a) => commands::scan_cmd(a, cli.seed, cli.timing, &sink),
        Command::Mc(a) => commands::mc_cmd(a, cli.seed, cli.timing, &sink),
        Command::Poisson(a) => commands::poisson_cmd(a, cli.seed, &sink),
        Command::Witness(a) => commands::witness_cmd(a, &sink),
        Command::SsetCheck(a) => commands::sset_cmd(a, &sink),
        Command::Ef(EfCommand::Solve(a)) => ef::solve_cmd(a, &sink),
        Command::Ef(EfCommand::Play(a)) => ef::play_cmd(a),
        Command::Ef(EfCommand::Crosscheck(a)) => ef::crosscheck_cmd(a, cli.seed, &sink),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

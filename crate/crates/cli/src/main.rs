mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Caps the global thread pool at `NEST_THREADS` when set.
#[cfg(feature = "parallel")]
fn configure_threads() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var("NEST_THREADS") {
        let n: usize =
            raw.trim().parse().map_err(|_| anyhow::anyhow!("NEST_THREADS must be a positive integer, got {raw:?}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() -> anyhow::Result<()> {
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> anyhow::Result<bool> {
        configure_threads()?;
        match cli.command {
            Command::Refine(a) => commands::refine(a),
            Command::Sample(a) => commands::sample(a),
            Command::Centrality(a) => commands::centrality(a),
            Command::Compare(a) => commands::compare(a),
            Command::Baseline(a) => commands::baseline(a),
            Command::Experiment(a) => commands::experiment(a),
            Command::Verify(a) => commands::verify(a),
        }
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

// Copyright 2026 The polariton-sim Contributors
// SPDX-License-Identifier: Apache-2.0

//! `polariton` command-line driver.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure,
//! 4 fit failure. Failures print one `error code=<n> kind=<kind> message=<json string>`
//! line on stderr.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand as ClapSubcommand, ValueEnum};
use polariton_core::exec::{with_threads, Execution};
use polariton_core::io::{parse_config_with, run, Preset, RunConfig, RunOptions, Subcommand};
use polariton_core::Error;

#[derive(Parser, Debug)]
#[command(name = "polariton", version, about = "Tripod-EIT light storage simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// INI configuration file; keys not given take preset defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory for CSV tables and the manifest.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Parameter preset, overriding any `preset =` line in the config.
    #[arg(long, global = true, value_enum)]
    preset: Option<PresetArg>,

    /// Worker threads for data-parallel loops.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for detector noise.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(ClapSubcommand, Debug, Clone)]
enum Command {
    /// Dark-state basis of the configured drive.
    Darkstates,
    /// Group delay against control Rabi frequency.
    Slowlight,
    /// One storage and retrieval cycle with beat fit.
    Store,
    /// Steady-state transmission map over both two-photon detunings.
    ScanTransmission,
    /// Storage over the configured magnetic fields and a linear fit of the beat.
    SweepField,
    /// Fit a damped beat to a trace file.
    FitBeat {
        /// Trace CSV (overrides `[output] trace`).
        #[arg(long)]
        trace: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PresetArg {
    Paper,
    Desk,
}

fn kind(code: i32) -> &'static str {
    match code {
        2 => "config",
        4 => "fit",
        _ => "numerical",
    }
}

fn fail(e: &Error) -> ExitCode {
    let code = e.exit_code();
    eprintln!("error code={code} kind={} message={:?}", kind(code), e.to_string());
    ExitCode::from(code as u8)
}

fn load(cli: &Cli) -> Result<RunConfig, Error> {
    let text = match &cli.config {
        Some(p) => fs::read_to_string(p).map_err(|e| Error::Config {
            line: 0,
            msg: format!("cannot read {}: {e}", p.display()),
        })?,
        None => String::new(),
    };
    let preset = cli.preset.map(|p| match p {
        PresetArg::Paper => Preset::Paper,
        PresetArg::Desk => Preset::Desk,
    });
    let mut cfg = parse_config_with(&text, preset)?;
    if let Command::FitBeat { trace: Some(t) } = &cli.command {
        cfg.output.trace = Some(t.display().to_string());
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load(&cli) {
        Ok(c) => c,
        Err(e) => return fail(&e),
    };
    if cli.threads == Some(0) {
        return fail(&Error::InvalidInput("--threads must be at least 1".into()));
    }
    let sub = match cli.command {
        Command::Darkstates => Subcommand::DarkStates,
        Command::Slowlight => Subcommand::SlowLight,
        Command::Store => Subcommand::Store,
        Command::ScanTransmission => Subcommand::ScanTransmission,
        Command::SweepField => Subcommand::SweepField,
        Command::FitBeat { .. } => Subcommand::FitBeat,
    };
    let opts = RunOptions {
        seed: cli.seed,
        threads: cli.threads,
        execution: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    match with_threads(cli.threads, || run(sub, &cfg, &cli.out, &opts)) {
        Ok(summary) => {
            for w in &summary.warnings {
                eprintln!("warning: {w}");
            }
            for n in &summary.notes {
                println!("{n}");
            }
            for (f, _) in &summary.files {
                println!("wrote {}", cli.out.join(f).display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

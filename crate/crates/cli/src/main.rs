//! `ssprop`: command-line front end for strong structural property checks.
//!
//! Exit status: 0 holds (or true), 1 fails, 2 inconclusive, 3 input error.

mod args;
mod error;
mod report;
mod run;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command, Options};
use error::CliError;
use report::{CommandEcho, JsonReport, SCHEMA_VERSION};

const INPUT_ERROR: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(INPUT_ERROR),
            };
        }
    };
    match execute(&cli.command, &cli.opts) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn execute(cmd: &Command, opts: &Options) -> Result<u8, CliError> {
    let start = Instant::now();
    let outcome = run::run(cmd, opts)?;
    let timing_ms = start.elapsed().as_secs_f64() * 1000.0;

    let to_stdout_json = opts.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    if !to_stdout_json {
        print!("{}", outcome.text);
    }
    if let Some(path) = &opts.json {
        let report = JsonReport {
            schema_version: SCHEMA_VERSION.into(),
            command: echo(cmd, opts)?,
            result: outcome.result,
            timing_ms,
        };
        let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
        text.push('\n');
        if to_stdout_json {
            print!("{text}");
        } else {
            std::fs::File::create(path)
                .and_then(|mut f| f.write_all(text.as_bytes()))
                .map_err(|source| CliError::Write {
                    path: path.clone(),
                    source,
                })?;
        }
    }
    Ok(outcome.status as u8)
}

fn echo(cmd: &Command, opts: &Options) -> Result<CommandEcho, CliError> {
    let (leaders, targets) = match cmd {
        Command::Target { leaders, targets, .. } => (
            Some(ssprop_core::parse_vertex_list(leaders)?),
            Some(ssprop_core::parse_vertex_list(targets)?),
        ),
        _ => (None, None),
    };
    let budget_grid = match &opts.budget_grid {
        Some(_) => Some(run::parse_budget(opts)?.quest_grid().iter().map(|v| v.to_string()).collect()),
        None => None,
    };
    Ok(CommandEcho {
        name: cmd.name().into(),
        inputs: cmd.inputs().iter().map(|p| p.display().to_string()).collect(),
        seed: opts.seed,
        trials: opts.trials,
        tol: opts.tol,
        budget_grid,
        leaders,
        targets,
    })
}

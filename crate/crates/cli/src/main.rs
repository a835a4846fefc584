mod args;
mod commands;
mod error;
mod manifest;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use commands::{SweepArgs, TrajectoryArgs};
use error::{CliResult, EXIT_OK, EXIT_USAGE};

fn run(cli: Cli) -> CliResult<i32> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Derive { common } => commands::derive(&common, &mut stdout),
        Command::Pattern { common, n_theta, n_phi, out } => commands::pattern(&common, n_theta, n_phi, &out),
        Command::Forces { common, out } => commands::forces(&common, out.as_deref(), &mut stdout),
        Command::Trajectory { common, t_end, dt, stride, include_drag, out } => {
            commands::trajectory(&common, &TrajectoryArgs { t_end, dt, stride, include_drag, out: &out })
        }
        Command::Sweep { common, param, from, to, steps, out } => {
            commands::sweep(&common, &SweepArgs { param, from, to, steps, out: &out })
        }
        Command::Verify { quad_order } => commands::verify(quad_order, &mut stdout),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return ExitCode::from(code as u8);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("recoil: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}

mod args;
mod commands;
mod render;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Verify(v) => commands::sweep(&v.sweep, &v.fail_on),
        Command::Search(s) => commands::sweep(&s.sweep, &s.fail_on),
        Command::Enumerate(e) => commands::enumerate(e),
        Command::Oracle(o) => commands::oracle(o),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::USAGE)
        }
    }
}

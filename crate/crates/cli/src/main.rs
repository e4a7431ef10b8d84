use std::process::ExitCode;

use clap::{CommandFactory, Parser};
use clifford_mellin_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run::execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(msg) = f.message() {
                eprintln!("error: {msg}");
            }
            if f.code() == 1 {
                eprintln!("\n{}", Cli::command().render_usage());
            }
            ExitCode::from(f.code())
        }
    }
}

mod commands;
mod config;
mod export;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (run, common): (fn(&RunConfig) -> wulff_core::error::Result<u8>, _) = match cli.command {
        Command::Check(c) => (commands::check, c),
        Command::Dual(c) => (commands::dual, c),
        Command::Verify(c) => (commands::verify, c),
        Command::Front(c) => (commands::front, c),
        Command::Caustic(c) => (commands::caustic, c),
        Command::Polar(c) => (commands::polar, c),
    };
    let result = RunConfig::from_args(common).and_then(|cfg| run(&cfg));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}

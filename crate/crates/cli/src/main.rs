mod args;
mod commands;
mod render;

use clap::Parser;
use std::io::Write;
use std::process::ExitCode;

use args::{Cli, Format};
use foldhecke::Error;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // clap uses exit code 2 for usage errors and 0 for --help/--version
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match commands::run(&cli.command) {
        Ok(out) => {
            let text = match cli.format {
                Format::Json => render::envelope(out.verb, &out.json),
                Format::Text => out.text,
            };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", text.trim_end());
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Invariant(_) => 3,
                Error::Validation(_) | Error::TooLarge(_) => 2,
            })
        }
    }
}

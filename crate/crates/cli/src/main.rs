use std::process::ExitCode;

use cehom_cli::report::EXIT_INPUT;
use cehom_cli::{run, Cli};
use clap::error::ErrorKind;
use clap::Parser;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_INPUT as u8),
            };
        }
    };
    let mut report = run(&cli.command, &cli.flags);
    if let (Some(path), Some(doc)) = (&cli.flags.out, &report.document) {
        if let Err(e) = std::fs::write(path, doc) {
            report.input_error(format!("{}: {e}", path.display()));
        }
    }
    if cli.flags.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code as u8)
}

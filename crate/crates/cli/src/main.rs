use std::io::Write;
use std::process::ExitCode;

use artinian_cli::{run, write_atomically, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, code) = run(&cli);
    match &cli.out {
        Some(path) => {
            if let Err(e) = write_atomically(path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
        }
    }
    ExitCode::from(code as u8)
}

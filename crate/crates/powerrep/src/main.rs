use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use powerrep::cli::{self, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    let result = cli::execute(cli.command);
    let code = cli::exit_code(&result);
    match result {
        Ok(exec) => {
            let written = match &exec.out {
                Some(path) => std::fs::write(path, exec.body.as_bytes()),
                None => std::io::stdout().write_all(exec.body.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
        }
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(code as u8)
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use transducer_lab::cli::{configure_threads, execute, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| {
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        let r = execute(&cli, &mut out);
        let _ = out.flush();
        r
    });
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result))
}

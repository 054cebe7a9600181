use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let env_tolerance = std::env::var(sphaerica_cli::TOLERANCE_ENV).ok();
    let out = sphaerica_cli::run(&args, &mut io::stdin().lock(), env_tolerance.as_deref());
    let _ = io::stdout().write_all(out.stdout.as_bytes());
    let _ = io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}

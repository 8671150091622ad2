use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(expsum::cli::run(std::env::args()) as u8)
}

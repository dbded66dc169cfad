use std::process::ExitCode;

fn main() -> ExitCode {
    let status = optcodes::cli::run(std::env::args().skip(1));
    ExitCode::from(status)
}

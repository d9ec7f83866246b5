use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(dendric::cli::run() as u8)
}

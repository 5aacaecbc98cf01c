use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(idgsc::cli::run(std::env::args_os()))
}

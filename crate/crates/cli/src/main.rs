use std::process::ExitCode;

fn main() -> ExitCode {
    pushopt_cli::run(std::env::args_os())
}

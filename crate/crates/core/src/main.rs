use std::process::ExitCode;

fn main() -> ExitCode {
    eigenmorph::cli::main_with_args(std::env::args_os())
}

use std::process::ExitCode;

fn main() -> ExitCode {
    contractlab::cli::main()
}

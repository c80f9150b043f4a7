use std::process::ExitCode;

fn main() -> ExitCode {
    rsci_core::cli::run()
}

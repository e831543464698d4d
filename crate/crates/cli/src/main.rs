use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    permgraph_cli::main_with(permgraph_cli::Cli::parse())
}

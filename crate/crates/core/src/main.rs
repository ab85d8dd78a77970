use std::process::ExitCode;

use clap::Parser;
use msd_strata::cli::{run, Cli};

fn main() -> ExitCode {
    run(Cli::parse())
}

//! `neoplasm-opt`: preprocessing, optimization, feature selection and
//! tuning from the command line.

mod args;
mod commands;
mod config;
mod failure;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::failure::Failure;

fn run(cli: Cli) -> Result<(), Failure> {
    let threads = config::threads_from_env()?;
    match cli.command {
        Command::Preprocess(a) => commands::preprocess::run(a, threads),
        Command::Optimize(a) => commands::optimize::run(a, threads),
        Command::Select(a) => commands::select::run(a, threads),
        Command::Tune(a) => commands::tune::run(a, threads),
        Command::Synth(a) => commands::synth::run(a, threads),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            for line in f.message.lines() {
                eprintln!("error: {line}");
            }
            ExitCode::from(f.code)
        }
    }
}

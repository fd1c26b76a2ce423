use std::process::ExitCode;

use clap::{Parser, Subcommand};
use emergent_cli::{execute, RunConfig};

#[derive(Parser)]
#[command(name = "emergent", version, about = "Mutual-information geometry scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario: vanilla-bell, bell-env, qudit-bell, spin-momentum,
    /// momentum-sweep, graph-reconstruct, property-suite, physical-scales.
    Run {
        scenario: String,
        /// `--config <path>`, `--seed <u64>`, `--out <path>`,
        /// `--format csv|json`, `--log-base e|2|10` and scenario
        /// parameters as `--<param> <value>`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true, value_name = "ARGS")]
        args: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Command::Run { scenario, args } = cli.command;
    let result = RunConfig::from_args(&scenario, &args).and_then(|cfg| execute(&cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("emergent: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

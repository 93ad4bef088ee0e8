use std::process::ExitCode;

use anosov_lab_cli::{execute, resolve_config, to_json, write_outputs, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || -> Result<bool, anosov_lab_cli::CliError> {
        let config = resolve_config(&cli)?;
        let outcome = execute(cli.command, &config, cli.workers)?;
        write_outputs(&config.output.dir, cli.command, &outcome, config.output.format)?;
        print!("{}", to_json(&outcome.summary));
        Ok(outcome.summary.pass)
    };
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

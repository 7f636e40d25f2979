mod args;
mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use error::CliError;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().collect();
    let result = (|| -> Result<(), CliError> {
        let mut out = commands::Output::stdout();
        if cli.explain {
            out.line(&commands::explain())?;
        }
        match cli.command {
            None if cli.explain => Ok(()),
            None => Err(CliError::Usage("a subcommand is required (see --help)".into())),
            Some(Command::Gen { kind }) => commands::gen(&mut out, &kind),
            Some(Command::SparseHalf(a)) => commands::sparse_half(&mut out, &argv, &a, cli.explain),
            Some(Command::Certify(a)) => commands::certify(&mut out, &argv, &a),
            Some(Command::Oracle(a)) => commands::oracle(&mut out, &argv, &a),
            Some(Command::VerifyExtremal(a)) => commands::verify_extremal(&mut out, &argv, &a),
        }
    })();
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("sparse-halves: {e}");
            e.exit()
        }
    }
}

use clap::Parser;

use policylint_cli::args::Cli;
use policylint_cli::{run, ERROR_EXIT};

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(outcome) => outcome.code(),
        Err(err) => {
            eprintln!("error: {err:#}");
            ERROR_EXIT
        }
    };
    std::process::exit(code);
}

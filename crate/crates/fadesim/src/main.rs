use clap::Parser;

use fadesim::cli::{run, Cli, CliError};

fn main() {
    env_logger::init();
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            eprintln!("run with --help for the full flag reference");
            std::process::exit(2);
        }
        Err(CliError::Domain(err)) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}

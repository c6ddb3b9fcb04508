use std::io::ErrorKind;

use clap::Parser;

use jvf::cli::{run, Cli, CliError};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => {}
        // a closed downstream pipe is not a failure of the run
        Err(CliError::Io(e)) if e.kind() == ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("jvf: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

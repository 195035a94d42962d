use clap::Parser;

use gtomo::cli::{dispatch, Cli};

fn main() {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(3);
        }
    }
}

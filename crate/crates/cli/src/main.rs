use clap::Parser;
use nonmarkov_cli::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("nonmarkov: {e}");
        std::process::exit(e.exit_code());
    }
}

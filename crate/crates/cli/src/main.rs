use clap::Parser;
use denclue_cli::args::Cli;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = denclue_cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

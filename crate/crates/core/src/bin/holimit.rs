use clap::Parser;

fn main() {
    std::process::exit(holimit::cli::run(holimit::cli::Cli::parse()));
}

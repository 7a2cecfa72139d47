use clap::Parser;
use series_order::cli::Command;

fn main() {
    std::process::exit(Command::parse().execute());
}

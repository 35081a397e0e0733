use clap::Parser;

fn main() {
    let cli = dpcount_cli::Cli::parse();
    std::process::exit(dpcount_cli::run(cli));
}

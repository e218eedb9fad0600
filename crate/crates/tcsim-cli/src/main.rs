use clap::Parser;

fn main() {
    let cli = tcsim_cli::Cli::parse();
    std::process::exit(tcsim_cli::run(cli));
}

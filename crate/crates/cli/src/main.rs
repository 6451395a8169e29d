use clap::Parser;

fn main() {
    let cli = icewave::Cli::parse();
    if let Err(e) = icewave::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

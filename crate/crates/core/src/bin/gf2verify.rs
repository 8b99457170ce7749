use clap::Parser;
use gf2verify::cli::{self, Cli};

fn main() {
    let args = Cli::parse();
    if let Err(e) = cli::configure_workers() {
        eprintln!("error: {e}");
        std::process::exit(2);
    }
    match cli::execute(&args) {
        Ok(report) => {
            print!("{}", report.render(args.format()));
            std::process::exit(report.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

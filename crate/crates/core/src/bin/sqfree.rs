use clap::Parser;

use sqfree::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            std::process::exit(out.code);
        }
        Err(e) => {
            eprintln!("sqfree: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

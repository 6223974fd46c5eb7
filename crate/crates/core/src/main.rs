use clap::Parser;

use cycleflow::cli::{run, CliConfig, EXIT_USAGE};

fn main() {
    let out = run(CliConfig::parse());
    if out.code == EXIT_USAGE {
        eprint!("{}", out.text);
        if !out.text.ends_with('\n') {
            eprintln!();
        }
    } else {
        print!("{}", out.text);
    }
    std::process::exit(out.code);
}

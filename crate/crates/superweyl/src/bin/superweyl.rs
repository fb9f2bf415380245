use clap::Parser;
use superweyl::cli::{run, JobConfig};

fn main() {
    let config = JobConfig::parse();
    let status = run(&config, &mut std::io::stdout().lock());
    std::process::exit(status);
}

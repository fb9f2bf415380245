//! Running command-line jobs from code.

use clap::Parser;
use superweyl::cli::{run, JobConfig};

fn main() {
    let jobs: [&[&str]; 4] = [
        &["superweyl", "roots", "--family", "osp:3:2"],
        &["superweyl", "fold", "--family", "sl:3:2", "--perm", "flip"],
        &["superweyl", "weyl", "--family", "osp:1:2", "--A", "trunc:2", "--lambda", "1", "--character", "--hw-algebra"],
        &["superweyl", "verify-garland", "--r", "1"],
    ];
    for args in jobs {
        println!("$ {}", args[1..].join(" "));
        let config = JobConfig::parse_from(args);
        let status = run(&config, &mut std::io::stdout());
        println!("exit {status}\n");
    }
}

use std::io;
use std::process::ExitCode;

use clap::Parser;
use powersum_cascade::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdin = io::stdin().lock();
    let stdout = io::BufWriter::new(io::stdout().lock());
    let code = run(cli, stdin, stdout, io::stderr().lock());
    ExitCode::from(code as u8)
}

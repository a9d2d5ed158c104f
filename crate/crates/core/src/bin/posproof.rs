use std::io::{Read, Write};
use std::process::ExitCode;

use clap::Parser;
use posproof::cli::{run, Command, Invocation};

fn main() -> ExitCode {
    let inv = Invocation::parse();
    let wants_stdin = match &inv.command {
        Command::Verify => true,
        Command::Check { input }
        | Command::Grammar { input }
        | Command::Schemes { input }
        | Command::Terms { input } => input == "-",
    };
    let mut stdin = String::new();
    if wants_stdin {
        if let Err(e) = std::io::stdin().read_to_string(&mut stdin) {
            eprintln!("error: cannot read stdin: {e}");
            return ExitCode::from(2);
        }
    }
    let out = run(&inv, &stdin);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code as u8)
}

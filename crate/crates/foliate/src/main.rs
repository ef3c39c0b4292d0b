use std::process::ExitCode;

use clap::Parser;
use foliate::cli::Cli;
use foliate::commands::run;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(&cli.command) {
        Ok(out) => {
            println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&e.to_json()).expect("serializable"));
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

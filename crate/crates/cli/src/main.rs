use std::process::ExitCode;

use clap::Parser;
use twinned_cli::{run, warnings, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    for w in warnings(&cli) {
        eprintln!("{w}");
    }
    let result = run(&cli).and_then(|report| Ok((report.render(cli.format)?, report.exit_code())));
    match result {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use jetvar_cli::cache::ResultsCache;
use jetvar_cli::{run, Cli};

/// A closed pipe (e.g. `| head`) is not an error worth reporting.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = ResultsCache::from_env().map_err(Into::into).and_then(|mut cache| run(&cli, &mut cache));
    match result {
        Ok(outcome) => {
            emit(&outcome.render(cli.json));
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            if cli.json {
                emit(&serde_json::json!({ "error": e.to_string(), "exit_code": e.exit_code() }).to_string());
            }
            let _ = writeln!(std::io::stderr().lock(), "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

mod config;
mod render;
mod run;

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use config::{Cli, Format, RunConfig, TopLevel};
use run::{read_json, run, Failure};

const EXIT_VERIFICATION: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// A saved report embeds its config under `"config"`; a bare config file is
/// accepted too.
fn load_config(path: &std::path::Path) -> Result<RunConfig, Failure> {
    let value: Value = read_json(path)?;
    let inner = match value {
        Value::Object(mut map) if map.contains_key("config") => map.remove("config").unwrap_or_default(),
        other => other,
    };
    serde_json::from_value(inner).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn execute(cli: Cli) -> Result<bool, Failure> {
    let config = match cli.command {
        TopLevel::Module(command) => RunConfig {
            command,
            globals: cli.global,
        },
        TopLevel::Run { config } => load_config(&config)?,
    };
    let outcome = run(&config)?;
    let mut text = match config.globals.format {
        Format::Json => outcome.json,
        Format::Table => render::table(&outcome.json).map_err(|e| Failure::Internal(e.to_string()))?,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &config.globals.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?
        }
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Internal(e.to_string()))?,
    }
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFICATION),
        Err(failure) => {
            let (code, msg) = match failure {
                Failure::Usage(m) => (EXIT_USAGE, m),
                Failure::Resource(m) => (EXIT_RESOURCE, m),
                Failure::Internal(m) => (EXIT_VERIFICATION, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

mod checks;
mod commands;
mod config;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use config::{cli_record, command_name, Cli, Format, RunConfig};

fn load_config(path: &std::path::Path) -> Result<RunConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
}

/// Prints a document; a closed pipe (`gup ... | head`) is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn init_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("GUP_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| format!("GUP_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        return Err("GUP_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let file = match &cli.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
        None => RunConfig::default(),
    };
    let merged = file.overlaid(&cli_record(&cli));
    let format = merged.format.unwrap_or(Format::Json);
    let cfg = commands::resolve(&cli.command, merged);
    let name = command_name(&cli.command);
    match commands::run(&cli.command, &cfg) {
        Ok(result) => {
            emit(&output::render(&output::success(&name, &args, &cfg, result), format));
            ExitCode::SUCCESS
        }
        Err(err) => {
            emit(&output::render(&output::failure(&name, &args, &err), format));
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}

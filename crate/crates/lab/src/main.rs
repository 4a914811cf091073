use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use cpb_lab::cli::Cli;
use cpb_lab::LabError;
use serde_json::json;

fn run(cli: Cli) -> Result<Vec<PathBuf>, LabError> {
    let cfg = cli.resolve()?;
    let dir = cfg.output.dir.clone().unwrap_or_else(|| PathBuf::from("."));
    let stem = cfg
        .output
        .stem
        .clone()
        .unwrap_or_else(|| cfg.command().name().to_string());
    cpb_lab::execute(&cfg, &dir, &stem)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let message = e.render().to_string();
            let first = message
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ")
                .to_string();
            eprintln!("{}", json!({ "status": "error", "kind": "usage", "errors": [first] }));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(paths) => {
            let artifacts: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
            println!("{}", json!({ "status": "ok", "artifacts": artifacts }));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

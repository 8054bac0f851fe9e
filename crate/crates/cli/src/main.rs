mod args;
mod commands;

use std::io::Write;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::Parser;
use serde_json::json;

use args::{Cli, Format};
use commands::{Outcome, RunError};

const THREADS_VAR: &str = "QONSAGER_THREADS";

const PASS: u8 = 0;
const FALSIFIED: u8 = 1;
const USAGE: u8 = 2;
const RESOURCE: u8 = 3;

fn report(status: &str, detail: serde_json::Value) {
    eprintln!("{}", json!({ "status": status, "detail": detail }));
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var(THREADS_VAR) else { return Ok(()) };
    let n: usize = v.parse().map_err(|_| format!("{THREADS_VAR}={v} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn render(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Text => outcome.text.clone(),
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json value") + "\n",
        Format::Csv => outcome.csv.clone(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = configure_threads() {
        report("usage", json!(e));
        return ExitCode::from(USAGE);
    }

    let (tx, rx) = mpsc::channel();
    let command = cli.command;
    let timing = cli.timing;
    std::thread::spawn(move || {
        let _ = tx.send(commands::run(&command, timing));
    });
    let result = match cli.timeout {
        Some(secs) => match rx.recv_timeout(Duration::from_secs(secs)) {
            Ok(r) => r,
            Err(_) => {
                report("timeout", json!({ "seconds": secs }));
                return ExitCode::from(RESOURCE);
            }
        },
        None => rx.recv().expect("worker reports back"),
    };

    let outcome = match result {
        Ok(o) => o,
        Err(RunError::Usage(msg)) => {
            report("usage", json!(msg));
            return ExitCode::from(USAGE);
        }
        Err(RunError::Failed(msg)) => {
            report("falsified", json!(msg));
            return ExitCode::from(FALSIFIED);
        }
    };

    let body = render(&outcome, cli.format);
    let written = match &cli.output {
        Some(path) => std::fs::write(path, body.as_bytes()).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(body.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        report("io", json!(e));
        return ExitCode::from(RESOURCE);
    }
    if outcome.passed {
        ExitCode::from(PASS)
    } else {
        report("falsified", json!(outcome.failures));
        ExitCode::from(FALSIFIED)
    }
}

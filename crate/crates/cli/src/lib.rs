//! Command-line front end: every operation of `holodep-core` as a subcommand
//! with JSON output, plus a fixture suite runner.
//!
//! Exit codes: 0 verified or found, 1 not verified or none found, 2 error
//! (with an error JSON), 64 usage.

pub mod error;
pub mod exec;
pub mod job;
pub mod suite;

pub use error::CliError;
pub use exec::{execute, Outcome};
pub use job::{Cli, JobSpec};

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::Value;
use std::ffi::OsString;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

pub fn exit_code(success: bool) -> i32 {
    if success {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Run a job, `verify-paper` included.
pub fn run_job(job: &JobSpec) -> (i32, Value) {
    let result = if job.command == "verify-paper" {
        job.validate().and_then(|_| {
            let dir = job.dir.clone().unwrap_or_else(suite::default_fixture_dir);
            suite::verify_paper(&dir, job.jobs).map(|(ok, v)| (exit_code(ok), v))
        })
    } else {
        execute(job).map(|o| (exit_code(o.success), o.json))
    };
    result.unwrap_or_else(|e| (e.exit_code(), e.to_json()))
}

pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            return RunOutput {
                code,
                stdout: e.render().to_string(),
            };
        }
    };
    let output = cli.output.clone();
    let (code, json) = run_job(&cli.into_job());
    let text = render(&json);
    match output {
        Some(path) => match std::fs::write(&path, &text) {
            Ok(()) => RunOutput {
                code,
                stdout: String::new(),
            },
            Err(e) => {
                let err = CliError::Io {
                    path,
                    message: e.to_string(),
                };
                RunOutput {
                    code: err.exit_code(),
                    stdout: render(&err.to_json()),
                }
            }
        },
        None => RunOutput { code, stdout: text },
    }
}

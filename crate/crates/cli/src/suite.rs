//! Fixture suite: JSON files pairing a job with its expected exit code and a
//! partial expected output.

use crate::error::CliError;
use crate::exec::execute;
use crate::exit_code;
use crate::job::JobSpec;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub provenance: String,
    pub job: JobSpec,
    pub expect: Expectation,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectation {
    pub exit: i32,
    /// Every key given here must match the actual output; other keys are
    /// ignored.
    #[serde(default)]
    pub output: Option<Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub file: String,
    pub pass: bool,
    pub detail: Option<String>,
}

pub fn default_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// First place where `expected` is not contained in `actual`.
pub fn partial_mismatch(expected: &Value, actual: &Value, path: &str) -> Option<String> {
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => e.iter().find_map(|(k, ev)| match a.get(k) {
            Some(av) => partial_mismatch(ev, av, &format!("{path}.{k}")),
            None => Some(format!("{path}.{k}: missing")),
        }),
        (Value::Array(e), Value::Array(a)) if e.len() == a.len() => e
            .iter()
            .zip(a)
            .enumerate()
            .find_map(|(i, (ev, av))| partial_mismatch(ev, av, &format!("{path}[{i}]"))),
        _ if expected == actual => None,
        _ => Some(format!("{path}: expected {expected}, got {actual}")),
    }
}

pub fn load_fixtures(dir: &Path) -> Result<Vec<(String, Fixture)>, CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: dir.to_path_buf(),
        message: e.to_string(),
    };
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io)?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()
        .map_err(io)?;
    files.retain(|p| p.extension().is_some_and(|e| e == "json"));
    files.sort();
    if files.is_empty() {
        return Err(CliError::MissingFixture {
            dir: dir.to_path_buf(),
        });
    }
    files
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).map_err(|e| CliError::Io {
                path: path.clone(),
                message: e.to_string(),
            })?;
            let fixture: Fixture = serde_json::from_str(&text).map_err(|e| CliError::Json {
                path: path.clone(),
                message: e.to_string(),
            })?;
            let file = path
                .file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((file, fixture))
        })
        .collect()
}

pub fn run_fixture(file: &str, fixture: &Fixture) -> CheckResult {
    let (code, output) = match execute(&fixture.job) {
        Ok(out) => (exit_code(out.success), out.json),
        Err(e) => (e.exit_code(), e.to_json()),
    };
    let detail = if code != fixture.expect.exit {
        Some(format!(
            "exit code {code}, expected {}",
            fixture.expect.exit
        ))
    } else {
        fixture
            .expect
            .output
            .as_ref()
            .and_then(|e| partial_mismatch(e, &output, "output"))
    };
    CheckResult {
        name: fixture.name.clone(),
        file: file.to_string(),
        pass: detail.is_none(),
        detail,
    }
}

/// Run every fixture in `dir`, on `jobs` threads when given.
pub fn verify_paper(dir: &Path, jobs: Option<usize>) -> Result<(bool, Value), CliError> {
    let fixtures = load_fixtures(dir)?;
    let run_all = || -> Vec<CheckResult> {
        fixtures
            .par_iter()
            .map(|(file, f)| run_fixture(file, f))
            .collect()
    };
    let mut results = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {k} workers: {e}")))?
            .install(run_all),
        None => fixtures
            .iter()
            .map(|(file, f)| run_fixture(file, f))
            .collect(),
    };
    results.sort_by(|a, b| a.name.cmp(&b.name).then(a.file.cmp(&b.file)));
    let failed = results.iter().filter(|r| !r.pass).count();
    let report = json!({
        "suite": "verify-paper",
        "total": results.len(),
        "passed": results.len() - failed,
        "failed": failed,
        "checks": results.iter().map(|r| json!({
            "name": r.name,
            "file": r.file,
            "pass": r.pass,
            "detail": r.detail,
        })).collect::<Vec<_>>(),
    });
    Ok((failed == 0, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_matching() {
        let actual = json!({"a": "1", "b": {"c": [1, 2], "d": true}});
        assert_eq!(
            partial_mismatch(&json!({"b": {"c": [1, 2]}}), &actual, "o"),
            None
        );
        assert_eq!(
            partial_mismatch(&json!({"b": {"d": false}}), &actual, "o"),
            Some("o.b.d: expected false, got true".into())
        );
        assert!(partial_mismatch(&json!({"e": 1}), &actual, "o")
            .unwrap()
            .contains("missing"));
        assert!(partial_mismatch(&json!({"b": {"c": [1]}}), &actual, "o").is_some());
    }
}

//! JSON job files. A job is `{subcommand, params, out, format}`; `params`
//! maps flag names (underscores or dashes) to values and is turned into the
//! equivalent command line, so a job behaves exactly like the flags would.
//! A file may also hold an array of jobs.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};
use crate::output::Format;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub subcommand: String,
    #[serde(default)]
    pub params: Map<String, Value>,
    pub out: Option<PathBuf>,
    pub format: Option<String>,
}

/// Parse a job file holding one job or an array of jobs.
pub fn load_jobs(text: &str, origin: &Path) -> CliResult<Vec<Job>> {
    let describe = |e: serde_json::Error| CliError::Usage(format!("job file {}: {e}", origin.display()));
    let batch = text.trim_start().starts_with('[');
    if batch {
        serde_json::from_str::<Vec<Job>>(text).map_err(describe)
    } else {
        Ok(vec![serde_json::from_str::<Job>(text).map_err(describe)?])
    }
}

fn param_args(params: &Map<String, Value>) -> CliResult<Vec<String>> {
    let mut out = Vec::new();
    for (key, value) in params {
        let flag = format!("--{}", key.replace('_', "-"));
        match value {
            Value::Null | Value::Bool(false) => {}
            Value::Bool(true) => out.push(flag),
            Value::Number(n) => out.extend([flag, n.to_string()]),
            Value::String(s) => out.extend([flag, s.clone()]),
            Value::Array(items) => {
                let parts = items
                    .iter()
                    .map(|v| match v {
                        Value::Number(n) => Ok(n.to_string()),
                        Value::String(s) => Ok(s.clone()),
                        other => Err(CliError::Usage(format!("param '{key}': unsupported list item {other}"))),
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                out.extend([flag, parts.join(",")]);
            }
            Value::Object(_) => return Err(CliError::Usage(format!("param '{key}' cannot be an object"))),
        }
    }
    Ok(out)
}

/// Command line equivalent to `job`. In a batch, jobs without `out` are
/// written next to the job file as `<stem>-<index>-<subcommand>[-<preset>].<ext>`.
pub fn to_argv(job: &Job, index: Option<usize>, job_path: &Path) -> CliResult<Vec<String>> {
    if job.subcommand == "job" {
        return Err(CliError::Usage("job files cannot run other job files".into()));
    }
    let mut argv = vec!["lateral-vdw".to_string(), job.subcommand.clone()];
    argv.extend(param_args(&job.params)?);
    let format = match job.format.as_deref() {
        None | Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => return Err(CliError::Usage(format!("job format must be csv or json, got '{other}'"))),
    };
    let base = job_path.parent().unwrap_or(Path::new("."));
    let out = match (&job.out, index) {
        (Some(p), _) => Some(if p.is_absolute() { p.clone() } else { base.join(p) }),
        (None, Some(i)) => {
            let stem = job_path.file_stem().and_then(|s| s.to_str()).unwrap_or("job");
            let preset = job.params.get("preset").and_then(Value::as_str).map(|p| format!("-{p}")).unwrap_or_default();
            Some(base.join(format!("{stem}-{:02}-{}{preset}.{}", i + 1, job.subcommand, format.extension())))
        }
        (None, None) => None,
    };
    if job.subcommand != "verify" || job.format.is_some() {
        argv.extend(["--format".to_string(), format.extension().to_string()]);
    }
    if let Some(out) = out {
        argv.extend(["--out".to_string(), out.to_string_lossy().into_owned()]);
    }
    Ok(argv)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_field_is_named() {
        let err = load_jobs(r#"{"subcommand": "thresholds", "outfile": "x"}"#, Path::new("j.json")).unwrap_err();
        assert!(err.to_string().contains("outfile"), "{err}");
    }

    #[test]
    fn params_become_flags() {
        let jobs = load_jobs(
            r#"{"subcommand": "intermediate", "params": {"ratio": [0.5, 0.99], "lambda_over_z0": 2, "force": true}}"#,
            Path::new("j.json"),
        )
        .unwrap();
        let argv = to_argv(&jobs[0], None, Path::new("/tmp/j.json")).unwrap();
        assert_eq!(
            argv,
            ["lateral-vdw", "intermediate", "--force", "--lambda-over-z0", "2", "--ratio", "0.5,0.99", "--format", "csv"]
        );
    }

    #[test]
    fn batch_names_are_deterministic() {
        let jobs = load_jobs(
            r#"[{"subcommand": "atlas", "params": {"preset": "fig5a"}}, {"subcommand": "thresholds", "format": "json"}]"#,
            Path::new("/data/run.json"),
        )
        .unwrap();
        let a = to_argv(&jobs[0], Some(0), Path::new("/data/run.json")).unwrap();
        let b = to_argv(&jobs[1], Some(1), Path::new("/data/run.json")).unwrap();
        assert_eq!(a.last().unwrap(), "/data/run-01-atlas-fig5a.csv");
        assert_eq!(b.last().unwrap(), "/data/run-02-thresholds.json");
    }
}

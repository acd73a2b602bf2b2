//! Manifests: one job file per line, relative to the manifest, `#` comments.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::job::parse_job;
use crate::run::{run_job, Overrides, ResultDoc, Status};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub file: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<ResultDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub jobs: Vec<SuiteEntry>,
}

impl SuiteReport {
    /// Largest exit code among the jobs, `0` for an empty suite.
    pub fn exit_code(&self) -> i32 {
        self.jobs.iter().map(|j| j.status.exit_code()).max().unwrap_or(0)
    }

    pub fn table(&self) -> String {
        let width = self.jobs.iter().map(|j| j.file.len()).max().unwrap_or(4).max(4);
        let mut out = format!("{:<width$}  {:<20}  exit\n", "job", "status");
        for j in &self.jobs {
            let status = serde_json::to_value(j.status).unwrap();
            let note = j.error.as_ref().or(j.result.as_ref().and_then(|r| r.error.as_ref()));
            let line = format!("{:<width$}  {:<20}  {}", j.file, status.as_str().unwrap(), j.status.exit_code());
            match note {
                Some(e) => out.push_str(&format!("{line}  {e}\n")),
                None => out.push_str(&format!("{line}\n")),
            }
        }
        out
    }
}

/// Job paths listed in a manifest, resolved against its directory.
pub fn read_manifest(path: &Path) -> std::io::Result<Vec<PathBuf>> {
    let text = fs::read_to_string(path)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| dir.join(l))
        .collect())
}

fn run_file(path: &Path, ov: &Overrides) -> SuiteEntry {
    let file = path.display().to_string();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return SuiteEntry { file, status: Status::InputError, result: None, error: Some(e.to_string()) },
    };
    match parse_job(&text) {
        Err(e) => SuiteEntry { file, status: Status::InputError, result: None, error: Some(e.to_string()) },
        Ok(job) => {
            let doc = run_job(&job, ov);
            SuiteEntry { file, status: doc.status, result: Some(doc), error: None }
        }
    }
}

/// Runs the jobs in parallel; the report keeps manifest order.
pub fn run_suite(files: &[PathBuf], ov: &Overrides) -> SuiteReport {
    SuiteReport { jobs: files.par_iter().map(|f| run_file(f, ov)).collect() }
}

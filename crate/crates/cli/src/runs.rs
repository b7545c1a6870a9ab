//! Stored reports: `<dir>/<id>.json` plus `<dir>/last` naming the newest.
//!
//! A run id is the first 16 hex digits of the SHA-256 of the report's
//! deterministic JSON, so rerunning a suite with the same parameters lands
//! on the same id.

use std::fs;
use std::path::Path;

use homstab::suites::VerificationReport;
use sha2::{Digest, Sha256};

pub const DEFAULT_DIR: &str = ".homstab/runs";

pub fn run_id(report: &VerificationReport) -> String {
    let digest = Sha256::digest(report.deterministic_json().as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

pub fn save(dir: &Path, report: &VerificationReport) -> Result<String, String> {
    let id = run_id(report);
    let io = |e: std::io::Error| format!("{}: {e}", dir.display());
    fs::create_dir_all(dir).map_err(io)?;
    fs::write(dir.join(format!("{id}.json")), report.to_json()).map_err(io)?;
    fs::write(dir.join("last"), &id).map_err(io)?;
    Ok(id)
}

pub fn load(dir: &Path, id: Option<&str>) -> Result<VerificationReport, String> {
    let id = match id {
        Some(id) => id.to_string(),
        None => fs::read_to_string(dir.join("last"))
            .map_err(|_| format!("no runs recorded in {}", dir.display()))?
            .trim()
            .to_string(),
    };
    if id.is_empty() || !id.chars().all(|c| c.is_ascii_hexdigit()) {
        return Err(format!("unknown run id {id:?}"));
    }
    let text = fs::read_to_string(dir.join(format!("{id}.json"))).map_err(|_| format!("unknown run id {id:?}"))?;
    VerificationReport::from_json(&text).map_err(|e| format!("run {id}: {e}"))
}

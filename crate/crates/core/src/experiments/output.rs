use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::Result;
use crate::qudit::StateFile;

/// 17 significant digits, so every `f64` survives a text round trip.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub seed: Option<u64>,
    pub timestamp: String,
    pub output_paths: Vec<String>,
}

impl RunManifest {
    pub fn new(
        command: &str,
        config: serde_json::Value,
        seed: Option<u64>,
        outputs: &[PathBuf],
    ) -> Self {
        Self {
            command: command.to_string(),
            config,
            seed,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            output_paths: outputs.iter().map(|p| p.display().to_string()).collect(),
        }
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out
        .file_name()
        .map(|n| n.to_os_string())
        .unwrap_or_default();
    name.push(".manifest.json");
    out.with_file_name(name)
}

pub fn write_manifest(out: &Path, manifest: &RunManifest) -> Result<PathBuf> {
    let path = manifest_path(out);
    let mut body = serde_json::to_string_pretty(manifest)?;
    body.push('\n');
    fs::write(&path, body)?;
    Ok(path)
}

pub fn read_state_file(path: &Path) -> Result<StateFile> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

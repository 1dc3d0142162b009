use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    pub path: String,
    pub sha256: String,
}

/// Record of one run: what was read, what was written and what went wrong.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config_sha256: String,
    pub started_unix: u64,
    pub finished_unix: u64,
    pub inputs: Vec<FileEntry>,
    pub outputs: Vec<FileEntry>,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

/// Reads inputs and writes outputs through one place so that every file is
/// checksummed. Outputs land in `dir`.
pub struct Run {
    pub dir: PathBuf,
    manifest: RunManifest,
}

impl Run {
    pub fn new(dir: PathBuf, command: String, config_json: &str) -> Result<Self, CliError> {
        std::fs::create_dir_all(&dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
        let manifest = RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            config_sha256: sha256_hex(config_json.as_bytes()),
            started_unix: now(),
            finished_unix: 0,
            inputs: Vec::new(),
            outputs: Vec::new(),
            warnings: Vec::new(),
            exit_code: 0,
        };
        let mut run = Self { dir, manifest };
        run.write("config.json", config_json)?;
        Ok(run)
    }

    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        self.manifest.inputs.push(FileEntry { path: path.display().to_string(), sha256: sha256_hex(&bytes) });
        String::from_utf8(bytes).map_err(|_| CliError::input(format!("{}: not UTF-8 text", path.display())))
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
        self.manifest.outputs.retain(|f| f.path != name);
        self.manifest.outputs.push(FileEntry { path: name.into(), sha256: sha256_hex(contents.as_bytes()) });
        Ok(path)
    }

    pub fn warn(&mut self, msg: impl Into<String>) {
        let msg = msg.into();
        eprintln!("warning: {msg}");
        self.manifest.warnings.push(msg);
    }

    pub fn finish(mut self, exit_code: i32) -> Result<(), CliError> {
        self.manifest.exit_code = exit_code;
        self.manifest.finished_unix = now();
        let text = serde_json::to_string_pretty(&self.manifest).expect("plain data") + "\n";
        let path = self.dir.join(MANIFEST_NAME);
        std::fs::write(&path, text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
    }
}

/// Re-hashes every output listed in `dir/manifest.json`; returns the
/// mismatching or missing files.
pub fn verify_dir(dir: &Path) -> Result<Vec<String>, CliError> {
    let path = dir.join(MANIFEST_NAME);
    let text = std::fs::read_to_string(&path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let manifest: RunManifest =
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("{}: {e}", path.display())))?;
    let mut bad = Vec::new();
    for f in &manifest.outputs {
        match std::fs::read(dir.join(&f.path)) {
            Ok(bytes) if sha256_hex(&bytes) == f.sha256 => {}
            Ok(_) => bad.push(format!("{}: checksum mismatch", f.path)),
            Err(e) => bad.push(format!("{}: {e}", f.path)),
        }
    }
    Ok(bad)
}

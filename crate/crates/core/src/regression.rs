//! Pinned outputs keyed by command fingerprint.
//!
//! The store is a JSON object mapping fingerprints to rendered output. The
//! first run of a fingerprint records it; later runs must reproduce it byte
//! for byte. Writes go to a sibling temporary file that is then renamed over
//! the store.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

/// Environment variable naming the store file used by the command line.
pub const STORE_ENV: &str = "GW1_REGRESSION_STORE";

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("regression store {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("regression store {path} is not a JSON object of strings: {source}")]
    Format { path: PathBuf, source: serde_json::Error },
    #[error("output for `{fingerprint}` differs from the pinned value")]
    Mismatch { fingerprint: String, pinned: String, found: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pin {
    Recorded,
    Matched,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressionStore {
    path: PathBuf,
    entries: BTreeMap<String, String>,
}

/// `command key=value ...` with keys in the given order.
pub fn fingerprint(command: &str, params: &[(&str, String)]) -> String {
    let mut out = command.to_string();
    for (key, value) in params {
        out.push(' ');
        out.push_str(key);
        out.push('=');
        out.push_str(value);
    }
    out
}

impl RegressionStore {
    /// Loads the store; a missing file is an empty store.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, StoreError> {
        let path = path.into();
        let entries = match fs::read_to_string(&path) {
            Ok(text) => {
                serde_json::from_str(&text).map_err(|source| StoreError::Format { path: path.clone(), source })?
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(source) => return Err(StoreError::Io { path, source }),
        };
        Ok(Self { path, entries })
    }

    /// The store named by [`STORE_ENV`], if set.
    pub fn from_env() -> Option<Result<Self, StoreError>> {
        std::env::var_os(STORE_ENV).map(Self::open)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn get(&self, fingerprint: &str) -> Option<&str> {
        self.entries.get(fingerprint).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Compares `output` with the pin for `fingerprint`, recording it first
    /// if there is none.
    pub fn check_or_record(&mut self, fingerprint: &str, output: &str) -> Result<Pin, StoreError> {
        match self.entries.get(fingerprint) {
            Some(pinned) if pinned == output => Ok(Pin::Matched),
            Some(pinned) => Err(StoreError::Mismatch {
                fingerprint: fingerprint.to_string(),
                pinned: pinned.clone(),
                found: output.to_string(),
            }),
            None => {
                self.entries.insert(fingerprint.to_string(), output.to_string());
                self.save()?;
                Ok(Pin::Recorded)
            }
        }
    }

    fn save(&self) -> Result<(), StoreError> {
        let io = |source| StoreError::Io { path: self.path.clone(), source };
        let mut text = serde_json::to_string_pretty(&self.entries).expect("string map serializes");
        text.push('\n');
        let mut tmp_name = self.path.file_name().map(|n| n.to_os_string()).unwrap_or_else(|| "store".into());
        tmp_name.push(format!(".tmp{}", std::process::id()));
        let tmp = self.path.with_file_name(tmp_name);
        let mut file = fs::File::create(&tmp).map_err(io)?;
        file.write_all(text.as_bytes()).map_err(io)?;
        file.sync_all().map_err(io)?;
        fs::rename(&tmp, &self.path).map_err(io)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_then_match() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pins.json");
        let mut store = RegressionStore::open(&path).unwrap();
        assert!(store.is_empty());
        assert_eq!(store.check_or_record("a n=1", "x\n").unwrap(), Pin::Recorded);
        let mut again = RegressionStore::open(&path).unwrap();
        assert_eq!(again.get("a n=1"), Some("x\n"));
        assert_eq!(again.check_or_record("a n=1", "x\n").unwrap(), Pin::Matched);
        assert!(matches!(again.check_or_record("a n=1", "y\n"), Err(StoreError::Mismatch { .. })));
        let leftovers: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(leftovers.len(), 1);
    }

    #[test]
    fn rejects_malformed_store() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pins.json");
        fs::write(&path, "[1, 2]").unwrap();
        assert!(matches!(RegressionStore::open(&path), Err(StoreError::Format { .. })));
    }

    #[test]
    fn fingerprints_list_parameters() {
        assert_eq!(fingerprint("hypersurface", &[("n", "5".into()), ("d", "8".into())]), "hypersurface n=5 d=8");
    }
}

//! Plain-file result cache. Each entry is a JSON document named by the
//! SHA-256 of the canonical parameter string and the engine version.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CachedResult {
    pub key: String,
    pub payload: Value,
    pub engine_version: String,
    /// Seconds since the Unix epoch.
    pub created_at: u64,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    version: String,
}

impl Cache {
    /// A cache rooted at `dir`; `None` computes without storing.
    pub fn new(dir: Option<PathBuf>, version: &str) -> Self {
        Cache { dir, version: version.to_string() }
    }

    pub fn disabled(version: &str) -> Self {
        Self::new(None, version)
    }

    pub fn entry_path(&self, key: &str) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        h.update(key.as_bytes());
        h.update(b"\n");
        h.update(self.version.as_bytes());
        Some(dir.join(format!("{}.json", hex::encode(h.finalize()))))
    }

    fn read(&self, path: &Path, key: &str) -> Option<Value> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                eprintln!("warning: cannot read cache entry {}: {e}", path.display());
                return None;
            }
        };
        match serde_json::from_str::<CachedResult>(&text) {
            Ok(c) if c.key == key && c.engine_version == self.version => Some(c.payload),
            _ => {
                eprintln!("warning: corrupt cache entry {}, recomputing", path.display());
                None
            }
        }
    }

    fn write(&self, path: &Path, key: &str, payload: &Value) {
        let created_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let entry = CachedResult {
            key: key.to_string(),
            payload: payload.clone(),
            engine_version: self.version.clone(),
            created_at,
        };
        if let Err(e) = write_atomic(path, &entry) {
            eprintln!("warning: cache write skipped for {}: {e}", path.display());
        }
    }

    /// Returns the stored payload for `key`, or runs `producer` and stores
    /// its result.
    pub fn lookup_or_compute(
        &self,
        key: &str,
        producer: impl FnOnce() -> Result<Value, CliError>,
    ) -> Result<Value, CliError> {
        let Some(path) = self.entry_path(key) else {
            return producer();
        };
        if let Some(v) = self.read(&path, key) {
            return Ok(v);
        }
        let v = producer()?;
        self.write(&path, key, &v);
        Ok(v)
    }
}

fn write_atomic(path: &Path, entry: &CachedResult) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    let res = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(serde_json::to_string(entry)?.as_bytes())?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;
    use std::cell::Cell;

    #[test]
    fn hit_skips_producer_and_version_changes_key() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(dir.path().to_path_buf()), "1");
        let calls = Cell::new(0);
        let produce = || {
            calls.set(calls.get() + 1);
            Ok(json!({"x": "1/2"}))
        };
        let a = c.lookup_or_compute("k", produce).unwrap();
        let b = c.lookup_or_compute("k", produce).unwrap();
        assert_eq!(a, b);
        assert_eq!(calls.get(), 1);
        let c2 = Cache::new(Some(dir.path().to_path_buf()), "2");
        assert_ne!(c.entry_path("k"), c2.entry_path("k"));
        c2.lookup_or_compute("k", produce).unwrap();
        assert_eq!(calls.get(), 2);
    }

    #[test]
    fn corrupt_entry_is_replaced() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(Some(dir.path().to_path_buf()), "1");
        let path = c.entry_path("k").unwrap();
        fs::write(&path, "{not json").unwrap();
        let v = c.lookup_or_compute("k", || Ok(json!(3))).unwrap();
        assert_eq!(v, json!(3));
        let stored: CachedResult = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert_eq!(stored.payload, json!(3));
        assert_eq!(stored.key, "k");
    }
}

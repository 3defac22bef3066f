//! On-disk cache of `fan e2` reports, keyed by the SHA-256 of the canonical fan.
//!
//! Enabled only when `TORICKH_CACHE_DIR` is set. Unreadable or corrupt entries are
//! treated as misses.

use std::fs;
use std::path::PathBuf;

use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "TORICKH_CACHE_DIR";

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn from_env() -> Option<Self> {
        let dir = std::env::var_os(CACHE_ENV)?;
        Some(Self { dir: dir.into() })
    }

    pub fn key(kind: &str, canonical: &str) -> String {
        let mut hasher = Sha256::new();
        hasher.update(kind.as_bytes());
        hasher.update([0]);
        hasher.update(canonical.as_bytes());
        hex::encode(hasher.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    /// Best effort: a cache that cannot be written is just not used.
    pub fn put(&self, key: &str, value: &Value) {
        if fs::create_dir_all(&self.dir).is_ok() {
            let _ = fs::write(self.path(key), value.to_string());
        }
    }
}

//! Read-through result cache: one versioned JSON file per key.

use std::cell::RefCell;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_DIR: &str = ".superdirac-cache";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub kind: String,
    pub n: usize,
    /// Λ or λ as entered, normalized to "a,b,…"; empty when not applicable.
    pub weight: String,
    pub order: usize,
}

impl CacheKey {
    pub fn new(kind: impl Into<String>, n: usize, weight: impl Into<String>, order: usize) -> Self {
        CacheKey {
            kind: kind.into(),
            n,
            weight: weight.into(),
            order,
        }
    }

    fn file_stem(&self) -> String {
        let text = format!("{}|{}|{}|{}", self.kind, self.n, self.weight, self.order);
        format!("{}-{}", self.kind, &sha256_hex(text.as_bytes())[..24])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub schema_version: u32,
    pub key: CacheKey,
    pub payload: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// Why a lookup missed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Miss {
    Absent,
    Disabled,
    OldVersion(u32),
    Corrupt(String),
}

pub struct Cache {
    dir: Option<PathBuf>,
    version: u32,
    warnings: RefCell<Vec<String>>,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self::with_version(dir, SCHEMA_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: u32) -> Self {
        Cache {
            dir: Some(dir.into()),
            version,
            warnings: RefCell::default(),
        }
    }

    pub fn disabled() -> Self {
        Cache {
            dir: None,
            version: SCHEMA_VERSION,
            warnings: RefCell::default(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, key: &CacheKey) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", key.file_stem())))
    }

    pub fn get(&self, key: &CacheKey) -> Result<String, Miss> {
        let path = self.path_for(key).ok_or(Miss::Disabled)?;
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Err(Miss::Absent),
            Err(e) => return Err(Miss::Corrupt(e.to_string())),
        };
        let entry: CacheEntry = serde_json::from_str(&text).map_err(|e| Miss::Corrupt(e.to_string()))?;
        if entry.schema_version != self.version {
            return Err(Miss::OldVersion(entry.schema_version));
        }
        if &entry.key != key {
            return Err(Miss::Corrupt("key mismatch".into()));
        }
        if sha256_hex(entry.payload.as_bytes()) != entry.sha256 {
            return Err(Miss::Corrupt("payload hash mismatch".into()));
        }
        Ok(entry.payload)
    }

    pub fn put(&self, key: &CacheKey, payload: &str) -> std::io::Result<()> {
        let Some(path) = self.path_for(key) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache file has a parent");
        fs::create_dir_all(dir)?;
        let entry = CacheEntry {
            schema_version: self.version,
            key: key.clone(),
            payload: payload.to_string(),
            sha256: sha256_hex(payload.as_bytes()),
        };
        let tmp = path.with_extension("json.tmp");
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string_pretty(&entry)?.as_bytes())?;
            f.write_all(b"\n")?;
        }
        fs::rename(tmp, path)
    }

    /// Warnings collected by `get_or_compute` since the last call.
    pub fn take_warnings(&self) -> Vec<String> {
        self.warnings.take()
    }

    /// Returns the cached payload or computes, stores and returns it. Cache
    /// problems become warnings and never change the result.
    pub fn get_or_compute<E>(&self, key: &CacheKey, compute: impl FnOnce() -> Result<String, E>) -> Result<String, E> {
        match self.get(key) {
            Ok(hit) => return Ok(hit),
            Err(Miss::Corrupt(why)) => self
                .warnings
                .borrow_mut()
                .push(format!("cache entry for {} is unreadable ({why}); recomputing", key.kind)),
            Err(_) => {}
        }
        let payload = compute()?;
        if let Err(e) = self.put(key, &payload) {
            self.warnings.borrow_mut().push(format!("could not write cache entry: {e}"));
        }
        Ok(payload)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_get_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = CacheKey::new("character-B", 1, "2", 0);
        cache.put(&key, "{\"x\":1}").unwrap();
        assert_eq!(cache.get(&key).unwrap(), "{\"x\":1}");
        assert_eq!(cache.get(&CacheKey::new("character-B", 1, "3", 0)), Err(Miss::Absent));
    }

    #[test]
    fn disabled_cache_never_hits() {
        let cache = Cache::disabled();
        let key = CacheKey::new("k", 1, "", 0);
        cache.put(&key, "p").unwrap();
        assert_eq!(cache.get(&key), Err(Miss::Disabled));
    }
}

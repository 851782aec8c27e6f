//! Content-addressed store for brute-force series.
//!
//! Each entry is `<sha256(key)>.json` holding the key, the series and a
//! sha256 of the serialized series. A checksum mismatch is reported as
//! [`Error::CorruptCache`].

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::qseries::QSeries;

pub const CACHE_ENV: &str = "COXFOLD_CACHE";

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    checksum: String,
    series: QSeries,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// The directory named by `COXFOLD_CACHE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.json", digest(key.as_bytes())))
    }

    pub fn get(&self, key: &str) -> Result<Option<QSeries>> {
        let path = self.path_for(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = || Error::CorruptCache(path.display().to_string());
        let entry: Entry = serde_json::from_slice(&bytes).map_err(|_| corrupt())?;
        if entry.key != key || entry.checksum != digest(serde_json::to_string(&entry.series)?.as_bytes()) {
            return Err(corrupt());
        }
        Ok(Some(entry.series))
    }

    pub fn put(&self, key: &str, series: &QSeries) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let body = serde_json::to_string(series)?;
        let entry = Entry { key: key.to_string(), checksum: digest(body.as_bytes()), series: series.clone() };
        // Write-then-rename so concurrent readers never see half a file.
        let path = self.path_for(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

//! On-disk result cache. Each entry is a JSON object `{key, sha256, payload}`;
//! an entry whose digest does not match its payload is recomputed.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    sha256: String,
    payload: String,
}

pub fn digest(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

#[derive(Clone, Debug, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn disabled() -> Self {
        Self { dir: None }
    }

    fn path(dir: &Path, key: &str) -> PathBuf {
        let name: String = key
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() || "=.-".contains(c) { c } else { '_' })
            .collect();
        dir.join(format!("{name}.json"))
    }

    /// A payload stored under `key` whose digest checks out.
    fn load(&self, key: &str) -> Option<String> {
        let dir = self.dir.as_ref()?;
        let path = Self::path(dir, key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if e.key == key && e.sha256 == digest(&e.payload) => Some(e.payload),
            Ok(_) => {
                eprintln!("warning: cache entry {} failed its digest check; recomputing", path.display());
                None
            }
            Err(_) => {
                eprintln!("warning: cache entry {} is unreadable; recomputing", path.display());
                None
            }
        }
    }

    /// Writes through a temporary file and an atomic rename.
    fn store(&self, key: &str, payload: &str) -> Result<(), CliError> {
        let Some(dir) = self.dir.as_ref() else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let entry = Entry {
            key: key.to_string(),
            sha256: digest(payload),
            payload: payload.to_string(),
        };
        let path = Self::path(dir, key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&entry).expect("entry serializes").as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// The cached value for `key`, or `compute()` stored under it. A payload
    /// that `decode` rejects counts as corrupt.
    pub fn get_or_compute<T>(
        &self,
        key: &str,
        compute: impl FnOnce() -> Result<T, CliError>,
        encode: impl Fn(&T) -> String,
        decode: impl Fn(&str) -> Option<T>,
    ) -> Result<T, CliError> {
        if let Some(payload) = self.load(key) {
            match decode(&payload) {
                Some(v) => return Ok(v),
                None => eprintln!("warning: cache entry for {key} does not parse; recomputing"),
            }
        }
        let v = compute()?;
        self.store(key, &encode(&v))?;
        Ok(v)
    }
}

pub fn key(module: &str, op: &str, params: &[(&str, String)]) -> String {
    let mut k = format!("{module}/{op}");
    for (name, v) in params {
        k.push_str(&format!("/{name}={v}"));
    }
    k.push_str(&format!("/v{VERSION}"));
    k
}

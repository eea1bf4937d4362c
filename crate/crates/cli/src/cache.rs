//! Append-only store of cohomology dimensions, one JSON record per line.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "JETVAR_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    /// `weil`, `wo` or `gf`.
    pub kind: String,
    pub algebra: String,
    pub relative: String,
    pub truncation: Option<u32>,
    pub degree: u32,
    pub weight: Option<i32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Record {
    #[serde(flatten)]
    key: CacheKey,
    dimension: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("cache {path}, line {line}: {source}")]
    Record { path: PathBuf, line: usize, source: serde_json::Error },
}

pub struct ResultsCache {
    path: Option<PathBuf>,
    entries: HashMap<CacheKey, usize>,
    writer: Mutex<()>,
}

impl ResultsCache {
    /// A cache that stores nothing.
    pub fn disabled() -> Self {
        ResultsCache { path: None, entries: HashMap::new(), writer: Mutex::new(()) }
    }

    /// Uses `JETVAR_CACHE` when set.
    pub fn from_env() -> Result<Self, CacheError> {
        match std::env::var_os(CACHE_ENV) {
            Some(p) if !p.is_empty() => Self::open(Path::new(&p)),
            _ => Ok(Self::disabled()),
        }
    }

    pub fn open(path: &Path) -> Result<Self, CacheError> {
        let mut entries = HashMap::new();
        if path.exists() {
            let file = File::open(path).map_err(|source| CacheError::Io { path: path.into(), source })?;
            for (i, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|source| CacheError::Io { path: path.into(), source })?;
                if line.trim().is_empty() {
                    continue;
                }
                let r: Record =
                    serde_json::from_str(&line).map_err(|source| CacheError::Record { path: path.into(), line: i + 1, source })?;
                entries.insert(r.key, r.dimension);
            }
        }
        Ok(ResultsCache { path: Some(path.into()), entries, writer: Mutex::new(()) })
    }

    pub fn is_enabled(&self) -> bool {
        self.path.is_some()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &CacheKey) -> Option<usize> {
        self.entries.get(key).copied()
    }

    /// Records new dimensions; keys already present are left alone.
    pub fn insert_all(&mut self, items: &[(CacheKey, usize)]) -> Result<(), CacheError> {
        let fresh: Vec<&(CacheKey, usize)> = items.iter().filter(|(k, _)| !self.entries.contains_key(k)).collect();
        if fresh.is_empty() {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let mut text = String::new();
            for (key, dimension) in &fresh {
                let r = Record { key: key.clone(), dimension: *dimension };
                text.push_str(&serde_json::to_string(&r).expect("records serialize"));
                text.push('\n');
            }
            let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
            let mut file =
                OpenOptions::new().create(true).append(true).open(path).map_err(|source| CacheError::Io { path: path.clone(), source })?;
            file.write_all(text.as_bytes()).map_err(|source| CacheError::Io { path: path.clone(), source })?;
        }
        for (k, d) in fresh {
            self.entries.insert(k.clone(), *d);
        }
        Ok(())
    }
}

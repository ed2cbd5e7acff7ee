use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use hypoham_core::formats::{emit_graph6, parse_auto};
use hypoham_core::Graph;

use crate::HogError;

/// Environment variable overriding the cache location.
pub const CACHE_DIR_VAR: &str = "HYPOHAM_CACHE_DIR";

/// Resolves the cache directory: the override variable, then the XDG cache
/// home, then `~/.cache`, then the system temp directory.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_DIR_VAR).filter(|d| !d.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(dir).join("hypoham");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(home).join(".cache").join("hypoham");
    }
    std::env::temp_dir().join("hypoham")
}

/// One graph6 file per key. Writes go through a temp file in the same
/// directory and a rename, so readers never see a partial file.
#[derive(Debug, Clone)]
pub struct DiskCache {
    dir: PathBuf,
}

pub(crate) fn id_key(id: u64) -> String {
    format!("hog-{id}")
}

pub(crate) fn read_graph_file(path: &Path) -> Result<Option<Graph>, HogError> {
    match fs::read(path) {
        Ok(bytes) => parse_auto(&bytes).map(Some).map_err(|source| HogError::Parse {
            origin: path.display().to_string(),
            source,
        }),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(source) => Err(HogError::Io {
            path: path.to_path_buf(),
            source,
        }),
    }
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Keys are restricted to `[A-Za-z0-9_-]` so they are always plain file names.
    pub fn path(&self, key: &str) -> Result<PathBuf, HogError> {
        let valid = !key.is_empty()
            && key
                .bytes()
                .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_');
        if !valid {
            return Err(HogError::InvalidKey(key.to_string()));
        }
        Ok(self.dir.join(format!("{key}.g6")))
    }

    pub fn get(&self, key: &str) -> Result<Option<Graph>, HogError> {
        read_graph_file(&self.path(key)?)
    }

    pub fn put(&self, key: &str, g: &Graph) -> Result<PathBuf, HogError> {
        let path = self.path(key)?;
        let io_err = |source| HogError::Io {
            path: path.clone(),
            source,
        };
        fs::create_dir_all(&self.dir).map_err(io_err)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io_err)?;
        let mut line = emit_graph6(g);
        line.push(b'\n');
        tmp.write_all(&line).map_err(io_err)?;
        tmp.as_file().sync_all().map_err(io_err)?;
        tmp.persist(&path).map_err(|e| io_err(e.error))?;
        Ok(path)
    }
}

/// Read-only directory of shipped graphs, laid out like the cache.
#[derive(Debug, Clone)]
pub struct FixtureStore {
    dir: PathBuf,
}

/// Environment variable overriding the fixture directory.
pub const FIXTURE_DIR_VAR: &str = "HYPOHAM_FIXTURE_DIR";

impl FixtureStore {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        FixtureStore { dir: dir.into() }
    }

    /// The override variable, else the fixtures shipped with this crate.
    pub fn bundled() -> Self {
        match std::env::var_os(FIXTURE_DIR_VAR).filter(|d| !d.is_empty()) {
            Some(dir) => FixtureStore::new(dir),
            None => FixtureStore::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures")),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn get(&self, id: u64) -> Result<Option<Graph>, HogError> {
        read_graph_file(&self.dir.join(format!("{}.g6", id_key(id))))
    }

    pub fn named(&self, name: &str) -> Result<Option<Graph>, HogError> {
        if name.contains(['/', '\\']) || name.starts_with('.') {
            return Err(HogError::InvalidKey(name.to_string()));
        }
        read_graph_file(&self.dir.join(format!("{name}.g6")))
    }
}

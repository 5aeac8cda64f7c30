//! On-disk cache of facet-orbit lists keyed by `(n, λ)`.
//!
//! A file holds one header line `rsl-cache v<version> sha256=<hex>` followed
//! by one serialized chain per line. Writes go to a temp file in the same
//! directory and are renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::chain::ChainType;
use crate::error::{Error, Result};
use crate::flag;
use crate::shape::Shape;

pub const FORMAT_VERSION: u32 = 1;
pub const ENV_VAR: &str = "RSL_CACHE_DIR";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheStatus {
    /// Served from memory.
    Memory,
    Hit,
    /// Not on disk; computed and stored.
    Miss,
    /// Checksum or parse failure; recomputed and rewritten.
    Corrupt,
    /// No cache directory configured.
    Disabled,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn checksum(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `explicit` wins over the environment variable.
    pub fn resolve(explicit: Option<&Path>) -> Option<Self> {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from))
            .map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, shape: &Shape) -> PathBuf {
        let parts: Vec<String> = shape.parts().iter().map(|p| p.to_string()).collect();
        self.dir.join(format!("facets-n{}-l{}.txt", shape.n(), parts.join("_")))
    }

    /// `Ok(None)` when absent; `Err(Checksum)` when the file is damaged.
    pub fn load(&self, shape: &Shape) -> Result<Option<Vec<ChainType>>> {
        let path = self.path_for(shape);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        let (header, body) = text.split_once('\n').unwrap_or((text.as_str(), ""));
        let expected = format!("rsl-cache v{FORMAT_VERSION} sha256=");
        let Some(sum) = header.strip_prefix(&expected) else {
            return Err(Error::Checksum(format!("{}: bad header", path.display())));
        };
        if sum != checksum(body) {
            return Err(Error::Checksum(format!("{}: digest mismatch", path.display())));
        }
        let chains = body
            .lines()
            .map(|l| ChainType::parse(shape, l))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Checksum(format!("{}: {e}", path.display())))?;
        Ok(Some(chains))
    }

    pub fn store(&self, shape: &Shape, chains: &[ChainType]) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.dir.display()));
        fs::create_dir_all(&self.dir).map_err(io)?;
        let mut body = String::new();
        for c in chains {
            body.push_str(&c.serialize());
            body.push('\n');
        }
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        writeln!(tmp, "rsl-cache v{FORMAT_VERSION} sha256={}", checksum(&body)).map_err(io)?;
        tmp.write_all(body.as_bytes()).map_err(io)?;
        tmp.as_file().sync_all().map_err(io)?;
        tmp.persist(self.path_for(shape)).map_err(|e| io(e.error))?;
        Ok(())
    }
}

/// Makes the facet list for `shape` available in memory, going through the
/// disk cache when one is given.
pub fn warm(shape: &Shape, cache: Option<&Cache>) -> Result<CacheStatus> {
    if flag::facets_memoized(shape) {
        return Ok(CacheStatus::Memory);
    }
    let Some(cache) = cache else {
        flag::facet_orbits(shape)?;
        return Ok(CacheStatus::Disabled);
    };
    let status = match cache.load(shape) {
        Ok(Some(chains)) => {
            flag::seed_facet_orbits(shape, chains);
            return Ok(CacheStatus::Hit);
        }
        Ok(None) => CacheStatus::Miss,
        Err(Error::Checksum(_)) => CacheStatus::Corrupt,
        Err(e) => return Err(e),
    };
    let chains = flag::facet_orbits(shape)?;
    cache.store(shape, &chains)?;
    Ok(status)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let shape = Shape::full(5).unwrap();
        assert!(cache.load(&shape).unwrap().is_none());
        let chains = flag::facet_orbits(&shape).unwrap();
        cache.store(&shape, &chains).unwrap();
        assert_eq!(cache.load(&shape).unwrap().unwrap(), *chains);

        let path = cache.path_for(&shape);
        let text = fs::read_to_string(&path).unwrap().replacen("@", "#", 1);
        fs::write(&path, text).unwrap();
        assert!(matches!(cache.load(&shape), Err(Error::Checksum(_))));
    }

    #[test]
    fn keys_are_distinct() {
        let cache = Cache::new("/tmp/x");
        let a = cache.path_for(&Shape::new(&[5, 1]).unwrap());
        let b = cache.path_for(&Shape::full(6).unwrap());
        assert_ne!(a, b);
    }
}

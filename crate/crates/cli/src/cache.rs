//! On-disk cache for character tables and permutation characters.
//!
//! Files live under `$FOULKES_CACHE_DIR` (default `.fhcache`) and carry the
//! format version in both the file name and the payload. A file that fails
//! to parse or has the wrong version is ignored and recomputed. Writes go to
//! a temporary file in the same directory and are renamed into place.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use foulkes_core::combinatorics::{CharacterTable, Partition};
use foulkes_core::plethysm::perm_character;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "FOULKES_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".fhcache";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    version: u32,
    key: String,
    payload: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Cache rooted at `$FOULKES_CACHE_DIR`, or `.fhcache` when unset.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Cache { dir: Some(dir) }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: Some(dir.into()) }
    }

    /// A cache that never touches the disk.
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("v{FORMAT_VERSION}-{key}.json")))
    }

    fn load<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let env: Envelope<T> = serde_json::from_str(&text).ok()?;
        (env.version == FORMAT_VERSION && env.key == key).then_some(env.payload)
    }

    fn store<T: Serialize>(&self, key: &str, payload: &T) -> anyhow::Result<()> {
        let (Some(dir), Some(path)) = (&self.dir, self.path(key)) else { return Ok(()) };
        fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
        let env = Envelope { version: FORMAT_VERSION, key: key.to_string(), payload };
        let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&env)?).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("moving cache file into {}", path.display()))?;
        Ok(())
    }

    fn get_or_compute<T: Serialize + DeserializeOwned>(
        &self,
        key: &str,
        compute: impl FnOnce() -> anyhow::Result<T>,
    ) -> anyhow::Result<T> {
        if let Some(v) = self.load(key) {
            return Ok(v);
        }
        let v = compute()?;
        self.store(key, &v)?;
        Ok(v)
    }

    /// Character table of `S_n`.
    pub fn character_table(&self, n: usize) -> anyhow::Result<CharacterTable> {
        self.get_or_compute(&format!("chars-n{n}"), || Ok(CharacterTable::compute(n)))
    }

    /// Fixed-point counts of every cycle type on the block set partitions of shape `a x b`.
    pub fn perm_character(&self, a: usize, b: usize) -> anyhow::Result<Vec<(Partition, u64)>> {
        self.get_or_compute(&format!("permchar-a{a}-b{b}"), || Ok(perm_character(a, b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cached_values_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let t = cache.character_table(6).unwrap();
        assert!(dir.path().join("v1-chars-n6.json").exists());
        assert_eq!(cache.character_table(6).unwrap(), t);
        assert_eq!(t, CharacterTable::compute(6));
        let p = cache.perm_character(2, 3).unwrap();
        assert_eq!(cache.perm_character(2, 3).unwrap(), p);
        let leftovers: Vec<_> = fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| e.as_ref().unwrap().file_name().to_string_lossy().ends_with(".tmp"))
            .collect();
        assert!(leftovers.is_empty());
    }

    #[test]
    fn corrupt_or_foreign_files_are_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        fs::write(dir.path().join("v1-chars-n4.json"), "not json").unwrap();
        assert_eq!(cache.character_table(4).unwrap(), CharacterTable::compute(4));
        // A valid file stored under the wrong key is not trusted.
        let t5 = cache.character_table(5).unwrap();
        fs::copy(dir.path().join("v1-chars-n5.json"), dir.path().join("v1-chars-n3.json")).unwrap();
        assert_eq!(cache.character_table(3).unwrap(), CharacterTable::compute(3));
        assert_ne!(cache.character_table(3).unwrap(), t5);
    }

    #[test]
    fn disabled_cache_writes_nothing() {
        let c = Cache::disabled();
        assert!(c.dir().is_none());
        assert_eq!(c.character_table(3).unwrap(), CharacterTable::compute(3));
    }
}

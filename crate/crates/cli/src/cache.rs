use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

/// Content cache for generated tables, keyed by the canonical argument
/// vector and the tool version.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// `HZLAG_CACHE_DIR`, else `<user cache dir>/hzlag`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os("HZLAG_CACHE_DIR")
            .map(PathBuf::from)
            .or_else(|| dirs::cache_dir().map(|d| d.join("hzlag")));
        Self { dir }
    }

    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn at(dir: impl AsRef<Path>) -> Self {
        Self { dir: Some(dir.as_ref().to_path_buf()) }
    }

    pub fn key(args: &[String]) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        for a in args {
            h.update([0u8]);
            h.update(a.as_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn path(&self, args: &[String]) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", Self::key(args))))
    }

    pub fn load(&self, args: &[String]) -> Option<String> {
        fs::read_to_string(self.path(args)?).ok()
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn store(&self, args: &[String], payload: &str) -> io::Result<()> {
        let Some(path) = self.path(args) else {
            return Ok(());
        };
        let dir = path.parent().expect("cache entry has a parent");
        fs::create_dir_all(dir)?;
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, payload)?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::at(dir.path());
        let args = vec!["gen".to_string(), "vk".to_string()];
        assert!(c.load(&args).is_none());
        c.store(&args, "payload").unwrap();
        assert_eq!(c.load(&args).as_deref(), Some("payload"));
        assert_ne!(Cache::key(&args), Cache::key(&["gen".to_string(), "vkx".to_string()]));
        assert!(Cache::disabled().load(&args).is_none());
    }
}

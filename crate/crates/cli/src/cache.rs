//! On-disk Groebner basis cache.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use regpow::groebner::CacheBackend;

const HEADER: &str = "regpow-gb-cache v1";

pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    /// Uses `REGPOW_CACHE_DIR`, falling back to `./.regpow-cache`.
    pub fn from_env() -> Self {
        let dir =
            std::env::var_os("REGPOW_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".regpow-cache"));
        DiskCache { dir }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.gb"))
    }
}

impl CacheBackend for DiskCache {
    fn load(&self, key: &str) -> Option<Vec<String>> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        let mut lines = text.lines();
        if lines.next() != Some(HEADER) {
            log::warn!("ignoring cache entry {} with unknown header", path.display());
            return None;
        }
        let body: Vec<String> = lines.map(str::to_string).collect();
        match body.split_last() {
            Some((last, elems)) if last == "end" && !elems.is_empty() => Some(elems.to_vec()),
            _ => {
                log::warn!("ignoring truncated cache entry {}", path.display());
                None
            }
        }
    }

    fn store(&self, key: &str, basis: &[String]) {
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(&self.dir)?;
            let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "{HEADER}")?;
            for b in basis {
                writeln!(f, "{b}")?;
            }
            writeln!(f, "end")?;
            f.sync_all()?;
            fs::rename(&tmp, self.path(key))
        };
        if let Err(e) = write() {
            log::warn!("could not write cache entry {key}: {e}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let c = DiskCache { dir: dir.path().to_path_buf() };
        assert_eq!(c.load("abc"), None);
        c.store("abc", &["x^2".into(), "y".into()]);
        assert_eq!(c.load("abc"), Some(vec!["x^2".to_string(), "y".to_string()]));
        fs::write(c.path("abc"), "garbage\nx\n").unwrap();
        assert_eq!(c.load("abc"), None);
        fs::write(c.path("abc"), format!("{HEADER}\nx^2\n")).unwrap();
        assert_eq!(c.load("abc"), None);
    }
}

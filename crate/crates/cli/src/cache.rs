//! Content-addressed result cache. Entries are JSON files named by the
//! SHA-256 of the canonical job key; writers serialize through a lock file.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

pub struct Cache {
    dir: PathBuf,
    version: String,
    pub lock_wait: Duration,
}

#[derive(Debug, PartialEq, Eq)]
pub enum Lookup {
    Hit(Value),
    Miss,
    /// Unreadable or mismatched entry; recomputed.
    Corrupt(String),
}

pub fn key_of(key: &Value) -> String {
    hex::encode(Sha256::digest(key.to_string().as_bytes()))
}

impl Cache {
    pub fn open(dir: &Path, version: &str) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf(), version: version.to_string(), lock_wait: Duration::from_secs(5) })
    }

    fn entry(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    pub fn get(&self, hash: &str) -> Lookup {
        let path = self.entry(hash);
        let Ok(text) = fs::read_to_string(&path) else {
            return Lookup::Miss;
        };
        let v: Value = match serde_json::from_str(&text) {
            Ok(v) => v,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        if v["version"] != json!(self.version) {
            return Lookup::Miss;
        }
        if v["key"] != json!(hash) || v.get("payload").is_none() {
            return Lookup::Corrupt(format!("{}: malformed entry", path.display()));
        }
        Lookup::Hit(v["payload"].clone())
    }

    /// Writes the entry atomically. Returns `false` if the lock could not be
    /// taken within a few seconds.
    pub fn put(&self, hash: &str, payload: &Value) -> std::io::Result<bool> {
        let lock = self.dir.join(".lock");
        let start = Instant::now();
        let guard = loop {
            match fs::OpenOptions::new().write(true).create_new(true).open(&lock) {
                Ok(f) => break f,
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if start.elapsed() > self.lock_wait {
                        return Ok(false);
                    }
                    std::thread::sleep(Duration::from_millis(20));
                }
                Err(e) => return Err(e),
            }
        };
        drop(guard);
        let result = (|| {
            let body = json!({ "version": self.version, "key": hash, "payload": payload });
            let tmp = self.dir.join(format!(".{hash}.tmp"));
            let mut f = fs::File::create(&tmp)?;
            f.write_all(serde_json::to_string(&body).unwrap().as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, self.entry(hash))
        })();
        let _ = fs::remove_file(&lock);
        result.map(|_| true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_version_bump() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path(), "1.0").unwrap();
        let h = key_of(&json!({"a": 1}));
        assert_eq!(c.get(&h), Lookup::Miss);
        assert!(c.put(&h, &json!([1, 2])).unwrap());
        assert_eq!(c.get(&h), Lookup::Hit(json!([1, 2])));
        let newer = Cache::open(dir.path(), "1.1").unwrap();
        assert_eq!(newer.get(&h), Lookup::Miss);
    }

    #[test]
    fn corrupt_entry_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path(), "1.0").unwrap();
        let h = key_of(&json!("x"));
        fs::write(dir.path().join(format!("{h}.json")), "{not json").unwrap();
        assert!(matches!(c.get(&h), Lookup::Corrupt(_)));
    }

    #[test]
    fn held_lock_blocks_writer() {
        let dir = tempfile::tempdir().unwrap();
        let mut c = Cache::open(dir.path(), "1.0").unwrap();
        c.lock_wait = Duration::from_millis(100);
        fs::write(dir.path().join(".lock"), "").unwrap();
        let t = Instant::now();
        assert!(!c.put("k", &json!(1)).unwrap());
        assert!(t.elapsed() >= Duration::from_millis(100));
        assert_eq!(c.get("k"), Lookup::Miss);
    }

    #[test]
    fn keys_are_stable() {
        assert_eq!(key_of(&json!({"b": 1, "a": 2})), key_of(&json!({"a": 2, "b": 1})));
        assert_ne!(key_of(&json!(1)), key_of(&json!(2)));
    }
}

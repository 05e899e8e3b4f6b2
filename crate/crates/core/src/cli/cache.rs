use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::hurwitz::RamificationProfile;

/// One line of the JSON-lines cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub key: String,
    /// Exact value as `"p/q"`.
    pub value: String,
    pub method: String,
    pub version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl CacheRecord {
    pub fn new(key: String, value: String, method: String) -> Self {
        CacheRecord {
            key,
            value,
            method,
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

/// `g0|7,1|-3,-3,-2`: genus, positive parts descending, negative parts
/// ascending. Relabeling `x` does not change the key.
pub fn cache_key(profile: &RamificationProfile, g: u32) -> String {
    let (pos, neg) = profile.sorted_parts();
    let join = |v: &[i64]| {
        v.iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("g{g}|{}|{}", join(&pos), join(&neg))
}

/// Append-only cache; the last record for a key wins.
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    records: HashMap<String, CacheRecord>,
}

impl Cache {
    pub fn open(path: &Path) -> Result<Cache, String> {
        let mut records = HashMap::new();
        match File::open(path) {
            Ok(f) => {
                for (i, line) in BufReader::new(f).lines().enumerate() {
                    let line = line.map_err(|e| format!("{}: {e}", path.display()))?;
                    if line.trim().is_empty() {
                        continue;
                    }
                    let rec: CacheRecord = serde_json::from_str(&line).map_err(|e| {
                        format!("{}:{}: malformed record: {e}", path.display(), i + 1)
                    })?;
                    records.insert(rec.key.clone(), rec);
                }
            }
            Err(e) if e.kind() == ErrorKind::NotFound => {}
            Err(e) => return Err(format!("{}: {e}", path.display())),
        }
        Ok(Cache {
            path: path.to_path_buf(),
            records,
        })
    }

    pub fn get(&self, key: &str) -> Option<&CacheRecord> {
        self.records.get(key)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn append(&mut self, record: CacheRecord) -> Result<(), String> {
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| format!("{}: {e}", self.path.display()))?;
        let line = serde_json::to_string(&record).expect("record serializes");
        writeln!(f, "{line}")
            .and_then(|_| f.flush())
            .map_err(|e| format!("{}: {e}", self.path.display()))?;
        self.records.insert(record.key.clone(), record);
        Ok(())
    }
}

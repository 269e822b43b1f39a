//! Append-only JSON-lines journal of computed reports.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    /// Canonical input: operation, system, normalized weight, options.
    pub key: String,
    pub operation: String,
    pub engine_version: String,
    pub timestamp: u64,
    pub payload: Value,
}

impl ResultRecord {
    pub fn new(key: String, operation: &str, payload: Value) -> Self {
        let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
        ResultRecord { key, operation: operation.to_string(), engine_version: orbitope::VERSION.to_string(), timestamp, payload }
    }
}

struct Journal {
    index: HashMap<(String, String), Value>,
    file: File,
}

/// The journal file is the only shared mutable state; all writes go through
/// one lock.
pub struct Cache {
    path: PathBuf,
    inner: Mutex<Journal>,
    skipped: usize,
}

impl Cache {
    pub fn open(path: &Path) -> Result<Cache> {
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir).with_context(|| format!("cannot create cache directory {}", dir.display()))?;
        }
        let mut index = HashMap::new();
        let mut skipped = 0;
        if path.exists() {
            let f = File::open(path).with_context(|| format!("cannot read cache {}", path.display()))?;
            for (n, line) in BufReader::new(f).lines().enumerate() {
                let line = line.with_context(|| format!("cannot read cache {}", path.display()))?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<ResultRecord>(&line) {
                    Ok(r) => {
                        index.entry((r.key, r.engine_version)).or_insert(r.payload);
                    }
                    Err(e) => {
                        eprintln!("warning: skipping corrupt cache line {} in {}: {e}", n + 1, path.display());
                        skipped += 1;
                    }
                }
            }
        }
        let file = OpenOptions::new().create(true).append(true).open(path).with_context(|| format!("cache path {} is not writable", path.display()))?;
        Ok(Cache { path: path.to_path_buf(), inner: Mutex::new(Journal { index, file }), skipped })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Lines dropped as unreadable when the journal was opened.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        let j = self.inner.lock().expect("cache lock");
        j.index.get(&(key.to_string(), orbitope::VERSION.to_string())).cloned()
    }

    /// Appends the record unless its key and engine version are already present.
    pub fn put(&self, record: ResultRecord) -> Result<()> {
        let mut j = self.inner.lock().expect("cache lock");
        let k = (record.key.clone(), record.engine_version.clone());
        if j.index.contains_key(&k) {
            return Ok(());
        }
        let mut line = serde_json::to_string(&record)?;
        line.push('\n');
        j.file.write_all(line.as_bytes()).with_context(|| format!("cannot append to cache {}", self.path.display()))?;
        j.file.flush()?;
        j.index.insert(k, record.payload);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.inner.lock().expect("cache lock").index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rayon::prelude::*;
    use serde_json::json;

    #[test]
    fn put_then_get() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.jsonl");
        let c = Cache::open(&p).unwrap();
        c.put(ResultRecord::new("k".into(), "r0", json!({"value": 3}))).unwrap();
        assert_eq!(c.get("k"), Some(json!({"value": 3})));
        assert_eq!(c.get("other"), None);
        drop(c);
        let c = Cache::open(&p).unwrap();
        assert_eq!(c.get("k"), Some(json!({"value": 3})));
    }

    #[test]
    fn version_bump_misses() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.jsonl");
        let mut old = ResultRecord::new("k".into(), "r0", json!(1));
        old.engine_version = "0.0.0-old".into();
        std::fs::write(&p, serde_json::to_string(&old).unwrap() + "\n").unwrap();
        let c = Cache::open(&p).unwrap();
        assert_eq!(c.get("k"), None);
    }

    #[test]
    fn corrupt_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.jsonl");
        let good = serde_json::to_string(&ResultRecord::new("k".into(), "r0", json!(2))).unwrap();
        std::fs::write(&p, format!("{{not json\n{good}\n\"truncated\n")).unwrap();
        let c = Cache::open(&p).unwrap();
        assert_eq!(c.skipped(), 2);
        assert_eq!(c.get("k"), Some(json!(2)));
    }

    #[test]
    fn concurrent_puts_write_each_record_once() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.jsonl");
        let c = Cache::open(&p).unwrap();
        // Every key is written by several threads.
        (0..400usize).into_par_iter().for_each(|i| {
            let k = i % 100;
            c.put(ResultRecord::new(format!("k{k}"), "scan", json!(k))).unwrap();
        });
        let text = std::fs::read_to_string(&p).unwrap();
        let mut keys: Vec<String> = text.lines().map(|l| serde_json::from_str::<ResultRecord>(l).unwrap().key).collect();
        keys.sort();
        let mut expected: Vec<String> = (0..100).map(|k| format!("k{k}")).collect();
        expected.sort();
        assert_eq!(keys, expected);
    }
}

//! Append-only JSON-lines store for computed degree sets.
//!
//! One record per line, keyed by `(kind, p, level, partition)`. Lines that do
//! not parse or fail validation are skipped with a warning on stderr.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sylow_branching::combinatorics::alpha;
use sylow_branching::oracle::DegreeSet;
use sylow_branching::Partition;

pub const FILE_NAME: &str = "degree-sets.jsonl";
const KIND: &str = "degree_set";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    p: u64,
    level: Option<u32>,
    partition: Partition,
}

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    kind: String,
    p: u64,
    /// `m` when `|λ| = p^m`; absent for composite sizes.
    level: Option<u32>,
    partition: Vec<usize>,
    value: Vec<u64>,
}

#[derive(Debug, Default)]
pub struct Cache {
    path: Option<PathBuf>,
    entries: BTreeMap<Key, DegreeSet>,
    pending: BTreeMap<Key, DegreeSet>,
}

/// `Some(m)` when `n = p^m`.
pub fn level_of(n: usize, p: u64) -> Option<u32> {
    let (mut q, mut m) = (1usize, 0u32);
    while q < n {
        q = q.checked_mul(p as usize)?;
        m += 1;
    }
    (q == n).then_some(m)
}

impl Cache {
    /// A cache that neither reads nor writes.
    pub fn disabled() -> Self {
        Cache::default()
    }

    pub fn open(dir: &Path) -> Self {
        let path = dir.join(FILE_NAME);
        let mut cache = Cache {
            path: Some(path.clone()),
            ..Cache::default()
        };
        let Ok(file) = fs::File::open(&path) else {
            return cache;
        };
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let parsed = line
                .map_err(|e| e.to_string())
                .and_then(|l| serde_json::from_str::<Record>(&l).map_err(|e| e.to_string()))
                .and_then(validate);
            match parsed {
                Ok((key, set)) => {
                    cache.entries.insert(key, set);
                }
                Err(why) => eprintln!(
                    "sylow: warning: skipping cache line {} of {}: {why}",
                    lineno + 1,
                    path.display()
                ),
            }
        }
        cache
    }

    pub fn get(&self, p: u64, lambda: &Partition) -> Option<&DegreeSet> {
        self.path.as_ref()?;
        self.entries.get(&key(p, lambda))
    }

    pub fn insert(&mut self, p: u64, lambda: &Partition, set: &DegreeSet) {
        if self.path.is_none() {
            return;
        }
        let k = key(p, lambda);
        if !self.entries.contains_key(&k) {
            self.entries.insert(k.clone(), set.clone());
            self.pending.insert(k, set.clone());
        }
    }

    /// Appends new records in key order.
    pub fn flush(&mut self) -> std::io::Result<()> {
        let Some(path) = &self.path else {
            return Ok(());
        };
        if self.pending.is_empty() {
            return Ok(());
        }
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut out = String::new();
        for (k, set) in std::mem::take(&mut self.pending) {
            let rec = Record {
                kind: KIND.into(),
                p: k.p,
                level: k.level,
                partition: k.partition.parts().to_vec(),
                value: set.iter().collect(),
            };
            out.push_str(&serde_json::to_string(&rec).expect("records serialize"));
            out.push('\n');
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        file.write_all(out.as_bytes())
    }
}

fn key(p: u64, lambda: &Partition) -> Key {
    Key {
        p,
        level: level_of(lambda.size(), p),
        partition: lambda.clone(),
    }
}

fn validate(rec: Record) -> Result<(Key, DegreeSet), String> {
    if rec.kind != KIND {
        return Err(format!("unknown record kind {:?}", rec.kind));
    }
    let lambda = Partition::new(rec.partition).map_err(|e| e.to_string())?;
    if lambda.is_empty() {
        return Err("empty partition".into());
    }
    let n = lambda.size();
    let level = level_of(n, rec.p);
    if rec.level != level {
        return Err(format!("level {:?} does not match |λ| = {n}", rec.level));
    }
    let a = alpha(n as u64, rec.p).map_err(|e| e.to_string())?;
    if rec.value.is_empty() || !rec.value.windows(2).all(|w| w[0] < w[1]) {
        return Err("degree set must be nonempty and strictly increasing".into());
    }
    if rec.value.iter().any(|&k| k > a) {
        return Err(format!("exponent above α = {a}"));
    }
    let key = Key {
        p: rec.p,
        level,
        partition: lambda,
    };
    Ok((key, DegreeSet(rec.value.into_iter().collect())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let lambda: Partition = "8,1".parse().unwrap();
        let set = DegreeSet([0, 1].into_iter().collect());
        let mut c = Cache::open(dir.path());
        assert!(c.get(3, &lambda).is_none());
        c.insert(3, &lambda, &set);
        c.flush().unwrap();
        let path = dir.path().join(FILE_NAME);
        let mut text = fs::read_to_string(&path).unwrap();
        text.push_str("not json\n");
        text.push_str(r#"{"kind":"degree_set","p":3,"level":2,"partition":[1,8],"value":[0]}"#);
        text.push('\n');
        text.push_str(r#"{"kind":"degree_set","p":3,"level":2,"partition":[7,2],"value":[0,9]}"#);
        text.push('\n');
        fs::write(&path, text).unwrap();
        let c = Cache::open(dir.path());
        assert_eq!(c.get(3, &lambda), Some(&set));
        assert_eq!(c.entries.len(), 1);
        assert!(Cache::disabled().get(3, &lambda).is_none());
    }

    #[test]
    fn levels() {
        assert_eq!(level_of(27, 3), Some(3));
        assert_eq!(level_of(1, 3), Some(0));
        assert_eq!(level_of(12, 3), None);
    }
}

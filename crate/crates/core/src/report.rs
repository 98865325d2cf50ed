//! Machine-readable verification reports (JSON lines) and a small file cache
//! for the long group scans.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

/// One verification row. `item` carries the table coordinate by content
/// (orbit labels, pairing name, row index), so reports diff cleanly.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Row {
    pub check: String,
    pub item: String,
    pub p: i64,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl Row {
    pub fn new(
        check: &str,
        item: impl Into<String>,
        p: i64,
        expected: impl ToString,
        computed: impl ToString,
        pass: bool,
    ) -> Self {
        Row {
            check: check.to_string(),
            item: item.into(),
            p,
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
        }
    }
}

#[derive(Default, Clone, Debug)]
pub struct Report {
    pub rows: Vec<Row>,
}

impl Report {
    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    pub fn extend(&mut self, rows: impl IntoIterator<Item = Row>) {
        self.rows.extend(rows);
    }

    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> Vec<&Row> {
        self.rows.iter().filter(|r| !r.pass).collect()
    }

    /// JSON lines, one row per line, in insertion order.
    pub fn to_json_lines(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            s.push_str(&serde_json::to_string(row).expect("row serializes"));
            s.push('\n');
        }
        s
    }

    pub fn write_to(&self, path: &Path) -> std::io::Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = fs::File::create(path)?;
        f.write_all(self.to_json_lines().as_bytes())
    }
}

/// Version tag baked into cache keys; bump when any scan semantics change.
pub const CACHE_VERSION: &str = "v1";

/// A JSON file cache keyed by (p, check, version). Values are whole
/// serialized payloads; hits and cold runs produce identical results because
/// only computed numbers are stored.
pub struct Cache {
    root: Option<PathBuf>,
}

impl Cache {
    pub fn new(root: Option<PathBuf>) -> Self {
        Cache { root }
    }

    pub fn disabled() -> Self {
        Cache { root: None }
    }

    fn path(&self, p: i64, check: &str) -> Option<PathBuf> {
        self.root
            .as_ref()
            .map(|r| r.join(format!("p{}_{}_{}.json", p, check, CACHE_VERSION)))
    }

    pub fn get<T: for<'de> Deserialize<'de>>(&self, p: i64, check: &str) -> Option<T> {
        let path = self.path(p, check)?;
        let data = fs::read_to_string(path).ok()?;
        serde_json::from_str(&data).ok()
    }

    pub fn put<T: Serialize>(&self, p: i64, check: &str, value: &T) {
        let Some(path) = self.path(p, check) else {
            return;
        };
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        if let Ok(data) = serde_json::to_string(value) {
            let _ = fs::write(path, data);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_lines_roundtrip() {
        let mut r = Report::default();
        r.push(Row::new("orbits", "D1^2", 5, "10", "10", true));
        r.push(Row::new("orbits", "D11", 5, "20", "21", false));
        let text = r.to_json_lines();
        assert_eq!(text.lines().count(), 2);
        assert!(!r.all_pass());
        assert_eq!(r.failures().len(), 1);
        let back: Row = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        assert_eq!(back.item, "D1^2");
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join("pvslab-cache-test");
        let cache = Cache::new(Some(dir.clone()));
        cache.put(5, "unit", &vec![1i64, 2, 3]);
        let got: Option<Vec<i64>> = cache.get(5, "unit");
        assert_eq!(got, Some(vec![1, 2, 3]));
        let _ = std::fs::remove_dir_all(dir);
    }
}

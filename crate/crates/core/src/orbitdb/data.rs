//! The tables as a versioned JSON document.
//!
//! The shipped file `data/orbitdb.v1.json` must equal [`canonical_json`]
//! byte for byte; `QMAP_BLESS=1 cargo test` rewrites it.

use serde::Serialize;

use super::families::{degeneration_families, Family};
use super::poset::{edges, PosetEdge};
use super::records::{records, OrbitRecord, LOW_AMBIENT_TABLE};
use super::OrbitBase;

pub const DATA_VERSION: u32 = 1;

/// The shipped data file.
pub const DATA_FILE: &str = include_str!("../../data/orbitdb.v1.json");

#[derive(Serialize)]
struct LowAmbient {
    label: OrbitBase,
    n: usize,
    normal_form: &'static str,
}

#[derive(Serialize)]
struct Document<'a> {
    version: u32,
    orbits: &'a [OrbitRecord],
    low_ambient: Vec<LowAmbient>,
    edges: Vec<PosetEdge>,
    families: &'a [Family],
}

/// Pretty-printed JSON with a trailing newline; fields and rows in table order.
pub fn canonical_json() -> String {
    let doc = Document {
        version: DATA_VERSION,
        orbits: records(),
        low_ambient: LOW_AMBIENT_TABLE.iter().map(|&(label, n, normal_form)| LowAmbient { label, n, normal_form }).collect(),
        edges: edges(),
        families: degeneration_families(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("tables serialize");
    s.push('\n');
    s
}

/// Whether the shipped file matches the compiled tables.
pub fn data_file_is_current() -> bool {
    DATA_FILE == canonical_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_matches_tables() {
        let fresh = canonical_json();
        if std::env::var_os("QMAP_BLESS").is_some() {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/orbitdb.v1.json");
            std::fs::write(path, &fresh).unwrap();
            return;
        }
        assert!(data_file_is_current(), "data/orbitdb.v1.json is stale; rerun with QMAP_BLESS=1");
    }

    #[test]
    fn deterministic_and_versioned() {
        assert_eq!(canonical_json(), canonical_json());
        let v: serde_json::Value = serde_json::from_str(&canonical_json()).unwrap();
        assert_eq!(v["version"], DATA_VERSION);
        assert_eq!(v["orbits"].as_array().unwrap().len(), records().len());
    }
}

//! JSON documents for tables and reports, CSV for the a/C(a) curve.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bounds::BoundReport;
use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::gtable::GTildeTable;

pub const TOOL: &str = "hsgas";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub config: Option<RunConfig>,
    /// Only filled in on request; a timestamp would break byte-identical
    /// reruns.
    pub wall_clock_seconds: Option<f64>,
}

impl Metadata {
    pub fn new(config: Option<RunConfig>) -> Self {
        Metadata {
            tool: TOOL.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            wall_clock_seconds: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableFile {
    #[serde(flatten)]
    pub table: GTildeTable,
    pub metadata: Metadata,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    #[serde(flatten)]
    pub report: BoundReport,
    pub metadata: Metadata,
}

/// Content hash of a table, independent of its metadata block.
pub fn fingerprint(table: &GTildeTable) -> String {
    let bytes = serde_json::to_vec(table).expect("tables always serialize");
    format!("sha256:{}", hex::encode(Sha256::digest(&bytes)))
}

pub fn to_document<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents always serialize");
    s.push('\n');
    s
}

pub fn parse_document<T: DeserializeOwned>(text: &str, path: &Path) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

pub fn parse_table(text: &str, path: &Path) -> Result<TableFile> {
    let file: TableFile = parse_document(text, path)?;
    file.table.validate().map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: match e {
            Error::InvalidConfiguration(m) => m,
            other => other.to_string(),
        },
    })?;
    Ok(file)
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_table(path: &Path) -> Result<TableFile> {
    parse_table(&read_text(path)?, path)
}

pub fn read_report(path: &Path) -> Result<ReportFile> {
    parse_document(&read_text(path)?, path)
}

pub fn curve_csv(curve: &[(f64, f64)]) -> String {
    let mut out = String::from("a,f\n");
    for (a, f) in curve {
        writeln!(out, "{a},{f}").unwrap();
    }
    out
}

pub fn parse_curve_csv(text: &str, path: &Path) -> Result<Vec<(f64, f64)>> {
    let bad = |line: usize, msg: &str| Error::Parse {
        path: path.to_path_buf(),
        message: format!("line {line}: {msg}"),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "a,f")) => {}
        _ => return Err(bad(1, "expected header a,f")),
    }
    lines
        .map(|(i, line)| {
            let (a, f) = line.split_once(',').ok_or_else(|| bad(i + 1, "expected two columns"))?;
            let a = a.parse().map_err(|_| bad(i + 1, "column a is not a number"))?;
            let f = f.parse().map_err(|_| bad(i + 1, "column f is not a number"))?;
            Ok((a, f))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{bound_report, Mode};
    use crate::gtable::build_gtable;

    fn small_table() -> GTildeTable {
        build_gtable(&RunConfig {
            samples_per_k: 50_000,
            chunk_size: 10_000,
            ..RunConfig::default()
        })
        .unwrap()
    }

    #[test]
    fn table_document_round_trip() {
        let file = TableFile {
            table: small_table(),
            metadata: Metadata::new(Some(RunConfig::default())),
        };
        let text = to_document(&file);
        let back = parse_table(&text, Path::new("t.json")).unwrap();
        assert_eq!(back, file);
        assert_eq!(to_document(&back), text);
    }

    #[test]
    fn report_document_round_trip() {
        let report = bound_report(&small_table(), Mode::Conservative, 5, 1e3).unwrap();
        let file = ReportFile {
            report,
            metadata: Metadata::new(None),
        };
        let text = to_document(&file);
        let back: ReportFile = parse_document(&text, Path::new("r.json")).unwrap();
        assert_eq!(to_document(&back), text);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let file = TableFile {
            table: small_table(),
            metadata: Metadata::new(None),
        };
        let mut v: serde_json::Value = serde_json::from_str(&to_document(&file)).unwrap();
        v.as_object_mut().unwrap().remove("k_max");
        let err = parse_table(&v.to_string(), Path::new("t.json")).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }));
        assert!(err.to_string().contains("k_max"), "{err}");

        let mut v: serde_json::Value = serde_json::from_str(&to_document(&file)).unwrap();
        v["entries"][3]["value"] = serde_json::json!(2.0);
        let err = parse_table(&v.to_string(), Path::new("t.json")).unwrap_err();
        assert!(err.to_string().contains("entries[3].value"), "{err}");
    }

    #[test]
    fn fingerprint_ignores_metadata_but_not_values() {
        let t = small_table();
        let mut u = t.clone();
        assert_eq!(fingerprint(&t), fingerprint(&u));
        u.entries[2].value = 0.5;
        if let Some(e) = u.entries[2].estimate.as_mut() {
            e.mean = 0.5;
        }
        assert_ne!(fingerprint(&t), fingerprint(&u));
        assert!(fingerprint(&t).starts_with("sha256:"));
    }

    #[test]
    fn curve_csv_round_trip() {
        let curve = vec![(0.1, 0.09), (1.0 / 3.0, 0.25)];
        let text = curve_csv(&curve);
        assert!(text.starts_with("a,f\n"));
        assert_eq!(parse_curve_csv(&text, Path::new("c.csv")).unwrap(), curve);
        assert!(parse_curve_csv("x,y\n", Path::new("c.csv")).is_err());
    }
}

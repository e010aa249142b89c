//! CSV tables and their JSON manifests.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::Result;

/// One CSV field.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Empty,
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_real(v: f64) -> String {
    format!("{v:?}")
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Real(v) => f.write_str(&fmt_real(*v)),
            Cell::Text(s) => f.write_str(s),
            Cell::Empty => Ok(()),
        }
    }
}

/// A header plus rows, rendered with `,` separators and `\n` line ends.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{cell}").expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}

/// Sidecar path of a data file: `run.csv` gives `run.json`.
pub fn manifest_path(data: &Path) -> PathBuf {
    if data.extension().is_some_and(|e| e == "json") {
        let mut s = data.as_os_str().to_owned();
        s.push(".manifest.json");
        PathBuf::from(s)
    } else {
        data.with_extension("json")
    }
}

/// Everything needed to repeat a run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub version: String,
    pub argv: Vec<String>,
    /// Parsed parameters; `j` appears as its doubled integer `j2`.
    pub parameters: Map<String, Value>,
    pub outputs: Vec<String>,
    /// Derived quantities reported alongside the data.
    pub results: Map<String, Value>,
}

impl RunManifest {
    pub fn new(command: &str, argv: &[String]) -> Self {
        RunManifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            argv: argv.to_vec(),
            parameters: Map::new(),
            outputs: Vec::new(),
            results: Map::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).expect("serialisable parameter"));
        self
    }

    pub fn result(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.results
            .insert(key.to_string(), serde_json::to_value(value).expect("serialisable result"));
        self
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Write `table` to `path` and its manifest next to it.
pub fn emit(table: &Table, path: &Path, manifest: &mut RunManifest) -> Result<PathBuf> {
    table.write(path)?;
    manifest.outputs.push(path.display().to_string());
    let mpath = manifest_path(path);
    manifest.write(&mpath)?;
    Ok(mpath)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_round_trip() {
        for v in [0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0, std::f64::consts::PI] {
            assert_eq!(fmt_real(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn table_layout() {
        let mut t = Table::new(&["x", "p"]);
        t.push(vec![Cell::Int(-1), Cell::Real(0.5)]);
        t.push(vec![Cell::Int(1), Cell::Empty]);
        assert_eq!(t.render(), "x,p\n-1,0.5\n1,\n");
    }

    #[test]
    fn sidecar_names() {
        assert_eq!(manifest_path(Path::new("a/run.csv")), PathBuf::from("a/run.json"));
        assert_eq!(manifest_path(Path::new("run")), PathBuf::from("run.json"));
        assert_eq!(manifest_path(Path::new("run.json")), PathBuf::from("run.json.manifest.json"));
    }
}

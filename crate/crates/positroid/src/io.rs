//! File loaders shared by the CLI and tests. Every failure here is a
//! malformed-input error.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{PlabicGraph, RawGraph};
use crate::linalg::{PlueckerVector, RationalMatrix};
use crate::measure::IdMap;
use crate::moves::Move;

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Malformed(format!("{}: {e}", path.display())))
}

pub fn read_raw_graph(path: &Path) -> Result<RawGraph> {
    RawGraph::from_json(&read_text(path)?)
}

pub fn read_graph(path: &Path) -> Result<PlabicGraph> {
    read_raw_graph(path)?.validate()
}

pub fn read_matrix(path: &Path) -> Result<RationalMatrix> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::Malformed(format!("matrix JSON: {e}")))
}

/// Edge weights or face values keyed by id.
pub fn read_id_map(path: &Path) -> Result<IdMap> {
    IdMap::from_json(&read_text(path)?)
}

pub fn read_pluecker(path: &Path, n: usize, k: usize) -> Result<PlueckerVector> {
    let v: serde_json::Value =
        serde_json::from_str(&read_text(path)?).map_err(|e| Error::Malformed(format!("Pluecker JSON: {e}")))?;
    PlueckerVector::from_json(n, k, &v)
}

pub fn read_moves(path: &Path) -> Result<Vec<Move>> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::Malformed(format!("move list JSON: {e}")))
}

/// Pretty JSON with a trailing newline, as written to stdout and golden files.
pub fn to_pretty<T: Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

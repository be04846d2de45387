#![allow(dead_code)]

use std::path::PathBuf;

use positroid::{PlabicGraph, RawGraph, RationalMatrix};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn raw(name: &str) -> RawGraph {
    let s = std::fs::read_to_string(fixture_path(&format!("{name}.json"))).unwrap();
    RawGraph::from_json(&s).unwrap()
}

pub fn graph(name: &str) -> PlabicGraph {
    raw(name).validate().unwrap()
}

pub fn matrix(name: &str) -> RationalMatrix {
    let s = std::fs::read_to_string(fixture_path(&format!("{name}.json"))).unwrap();
    serde_json::from_str(&s).unwrap()
}

pub const GRAPH_FIXTURES: &[&str] = &["square4", "schubert36", "d4", "nonplucker", "chamber", "tri3", "tri6"];

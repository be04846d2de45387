//! Fixture loading shared by the benchmarks.

use std::path::PathBuf;

use positroid::{PlabicGraph, PlabicModel, RationalMatrix};

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.json"))
}

pub fn graph(name: &str) -> PlabicGraph {
    positroid::io::read_graph(&fixture_path(name)).expect("graph fixture")
}

pub fn model(name: &str) -> PlabicModel {
    PlabicModel::new(graph(name)).expect("reduced fixture")
}

pub fn matrix(name: &str) -> RationalMatrix {
    positroid::io::read_matrix(&fixture_path(name)).expect("matrix fixture")
}

#![allow(dead_code)]

use std::path::PathBuf;

use mmph::coord::{Coordinatization, Ring};
use mmph::lang::{parse_coordinatization, parse_mmph};
use mmph::Mmph;
use serde::Deserialize;

#[derive(Debug, Clone, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub dim: usize,
    pub name: String,
    pub string: bool,
    pub ring: Option<String>,
}

#[derive(Deserialize)]
struct Manifest {
    fixture: Vec<Fixture>,
}

pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus")
}

pub fn fixtures() -> Vec<Fixture> {
    let text = std::fs::read_to_string(dir().join("manifest.toml")).expect("manifest");
    toml::from_str::<Manifest>(&text).expect("manifest parses").fixture
}

pub fn fixture(id: &str) -> Fixture {
    fixtures().into_iter().find(|f| f.id == id).unwrap_or_else(|| panic!("no fixture {id}"))
}

pub fn raw(id: &str) -> String {
    std::fs::read_to_string(dir().join(format!("{id}.mmp"))).expect("fixture string")
}

pub fn mmph(id: &str) -> Mmph {
    let f = fixture(id);
    parse_mmph(&raw(id), Some(f.dim)).unwrap_or_else(|e| panic!("{id}: {e}"))
}

pub fn coords(id: &str) -> Coordinatization {
    let f = fixture(id);
    let ring = Ring::from_name(f.ring.as_deref().expect("fixture has vectors")).expect("ring name");
    let text = std::fs::read_to_string(dir().join(format!("{id}.vec"))).expect("fixture vectors");
    parse_coordinatization(&text, ring).unwrap_or_else(|e| panic!("{id}: {e}"))
}

/// (k, l) from a name like "105-136".
pub fn shape(name: &str) -> (usize, usize) {
    let (k, l) = name.split_once('-').expect("k-l name");
    (k.parse().unwrap(), l.trim_end_matches(|c: char| c.is_alphabetic()).parse().unwrap())
}

//! Reading and writing the file formats.

use std::fs;
use std::path::Path;

use crate::error::Result;
use crate::sset::TruncSSet;

use super::category::{CategoryDoc, FinCategory};
use super::monoid::{GradedMonoidPresentation, MonoidDoc};
use super::poset::{FinPoset, PosetDoc};
use super::rpt::{parse_tree_file, PlaneForest};

pub fn load_sset(path: impl AsRef<Path>) -> Result<TruncSSet> {
    TruncSSet::from_json_str(&fs::read_to_string(path)?)
}

pub fn save_sset(x: &TruncSSet, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, x.to_json_string())?;
    Ok(())
}

pub fn load_poset(path: impl AsRef<Path>) -> Result<FinPoset> {
    let doc: PosetDoc = serde_json::from_str(&fs::read_to_string(path)?)?;
    FinPoset::from_doc(&doc)
}

pub fn load_category(path: impl AsRef<Path>) -> Result<FinCategory> {
    let doc: CategoryDoc = serde_json::from_str(&fs::read_to_string(path)?)?;
    FinCategory::from_doc(&doc)
}

pub fn load_monoid(path: impl AsRef<Path>) -> Result<GradedMonoidPresentation> {
    let doc: MonoidDoc = serde_json::from_str(&fs::read_to_string(path)?)?;
    GradedMonoidPresentation::from_doc(&doc)
}

pub fn load_forests(path: impl AsRef<Path>) -> Result<Vec<PlaneForest>> {
    parse_tree_file(&fs::read_to_string(path)?)
}

pub fn to_pretty_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

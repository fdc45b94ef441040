//! Named lattices, spaces and tables, plus the bundled document corpus with
//! machine-checkable expectations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catlab::{enumerate_subcategory_lattice, powerset_model, validate_table, CategoryTable, SubcategoryKind, TableDoc};
use crate::error::{Error, Result};
use crate::lattice::{load_lattice, FiniteLattice, ForbiddenShape, LatticeDoc};
use crate::topology::{load_space, FiniteSpace, SpaceDoc};

const MANIFEST: &str = include_str!("../corpus/manifest.json");

const FILES: &[(&str, &str)] = &[
    ("a2-nullity.json", include_str!("../corpus/a2-nullity.json")),
    ("a2.table.json", include_str!("../corpus/a2.table.json")),
    ("m3.json", include_str!("../corpus/m3.json")),
    ("n5.json", include_str!("../corpus/n5.json")),
    ("chain-4.json", include_str!("../corpus/chain-4.json")),
    ("boolean-3.json", include_str!("../corpus/boolean-3.json")),
    ("sierpinski.space.json", include_str!("../corpus/sierpinski.space.json")),
    ("glued.space.json", include_str!("../corpus/glued.space.json")),
];

pub fn bundled_file(file: &str) -> Option<&'static str> {
    FILES.iter().find(|(f, _)| *f == file).map(|(_, body)| *body)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntryKind {
    Lattice,
    Space,
    Table,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expectations {
    pub elements: Option<usize>,
    pub distributive: Option<bool>,
    pub forbidden: Option<ForbiddenShape>,
    /// Point counts keyed by space-kind name.
    #[serde(default)]
    pub points: BTreeMap<String, usize>,
    /// Closed family sizes keyed by space-kind name (formal empty set included).
    #[serde(default)]
    pub closed_sets: BTreeMap<String, usize>,
    /// Whether the closed family is a topology, keyed by space-kind name.
    #[serde(default)]
    pub topology: BTreeMap<String, bool>,
    /// Fixed-element counts of the classification, keyed by space-kind name.
    #[serde(default)]
    pub fixed: BTreeMap<String, usize>,
    pub t0: Option<bool>,
    pub quotient_points: Option<usize>,
    pub kq_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: EntryKind,
    pub file: String,
    /// Subcategory kind for table entries.
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub subcategory: Option<String>,
    #[serde(default)]
    pub expected: Option<Expectations>,
}

impl CorpusEntry {
    pub fn document(&self) -> &'static str {
        bundled_file(&self.file).expect("manifest names a bundled file")
    }
}

pub fn entries() -> Vec<CorpusEntry> {
    serde_json::from_str(MANIFEST).expect("bundled manifest parses")
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    entries().into_iter().find(|e| e.name == name)
}

fn parse_lattice(body: &str) -> Result<FiniteLattice> {
    let doc: LatticeDoc = serde_json::from_str(body)?;
    load_lattice(&doc)
}

pub fn a2_nullity() -> FiniteLattice {
    parse_lattice(bundled_file("a2-nullity.json").unwrap()).expect("bundled lattice is valid")
}

/// The exact structure of the A2 path algebra: objects 0, a = P1, b = P2,
/// c = S2 and the sequence `0 → a → b → c → 0`.
pub fn a2_table() -> CategoryTable {
    let doc: TableDoc = serde_json::from_str(bundled_file("a2.table.json").unwrap()).unwrap();
    validate_table(&doc).expect("bundled table is valid")
}

pub fn a2_lattice(kind: SubcategoryKind) -> FiniteLattice {
    enumerate_subcategory_lattice(&a2_table(), kind).expect("small table")
}

pub fn chain(n: usize) -> FiniteLattice {
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteLattice::from_leq(format!("chain-{n}"), labels, |a, b| a <= b).expect("chains are lattices")
}

/// `0 < x, y, z < 1`.
pub fn m3() -> FiniteLattice {
    parse_lattice(bundled_file("m3.json").unwrap()).unwrap()
}

/// `0 < a < b < 1` and `0 < c < 1`.
pub fn n5() -> FiniteLattice {
    parse_lattice(bundled_file("n5.json").unwrap()).unwrap()
}

pub fn powerset(n: usize) -> FiniteLattice {
    powerset_model(n).expect("small powerset")
}

/// A copy of `lattice` whose element `i` is the original element `perm[i]`.
pub fn relabel_permuted(lattice: &FiniteLattice, perm: &[usize]) -> FiniteLattice {
    let labels = perm.iter().map(|&p| lattice.label(p).to_string()).collect();
    FiniteLattice::from_leq(format!("{}'", lattice.name()), labels, |a, b| lattice.leq(perm[a], perm[b]))
        .expect("a permuted lattice is a lattice")
}

/// The lattices every suite runs over.
pub fn named_lattices() -> Vec<FiniteLattice> {
    let mut out = vec![
        a2_nullity(),
        a2_lattice(SubcategoryKind::Nullity),
        a2_lattice(SubcategoryKind::Serre),
        m3(),
        n5(),
    ];
    out.extend((1..=6).map(chain));
    out.extend((1..=4).map(powerset));
    out
}

pub fn sierpinski() -> FiniteSpace {
    let doc: SpaceDoc = serde_json::from_str(bundled_file("sierpinski.space.json").unwrap()).unwrap();
    load_space(&doc).unwrap()
}

fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

pub fn discrete_space(n: usize) -> FiniteSpace {
    FiniteSpace::from_preorder(format!("discrete-{n}"), point_names(n), |x, y| x == y)
}

pub fn indiscrete_space(n: usize) -> FiniteSpace {
    FiniteSpace::from_preorder(format!("indiscrete-{n}"), point_names(n), |_, _| true)
}

/// Loads an entry's document into the lattice its expectations refer to:
/// the lattice itself, the enumerated subcategory lattice of a table, or the
/// closed-set lattice of a space.
pub fn entry_lattice(entry: &CorpusEntry) -> Result<FiniteLattice> {
    let body = entry.document();
    match entry.kind {
        EntryKind::Lattice => parse_lattice(body),
        EntryKind::Space => {
            let doc: SpaceDoc = serde_json::from_str(body)?;
            Ok(load_space(&doc)?.closed_set_lattice())
        }
        EntryKind::Table => {
            let doc: TableDoc = serde_json::from_str(body)?;
            let kind: SubcategoryKind = entry
                .subcategory
                .as_deref()
                .ok_or_else(|| Error::UnknownKind("table entry without a type".into()))?
                .parse()?;
            enumerate_subcategory_lattice(&validate_table(&doc)?, kind)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_files_exist() {
        for e in entries() {
            assert!(bundled_file(&e.file).is_some(), "{}", e.file);
            entry_lattice(&e).unwrap();
        }
    }

    #[test]
    fn bundled_a2_matches_enumeration() {
        let bundled = a2_nullity();
        let generated = a2_lattice(SubcategoryKind::Nullity);
        assert!(crate::hom::find_isomorphism(&bundled, &generated).is_some());
    }
}

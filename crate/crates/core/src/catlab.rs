//! Subcategory lattices of toy abelian categories.
//!
//! A [`CategoryTable`] lists indecomposable isomorphism classes and the short
//! exact sequences `0 → sub → mid → quot → 0` between them. A subcategory is
//! a set of those classes; direct sums are implicit, so replete and additive
//! closures are the identity at this encoding.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Largest object count whose subsets are enumerated.
pub const MAX_OBJECTS: usize = 12;
/// Largest ground set for [`powerset_model`]; 2^10 elements is the lattice cap.
pub const MAX_POWERSET: usize = 10;

/// Table document: `{ "objects": [string], "zero": index, "ses": [[sub, mid, quot]] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDoc {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub objects: Vec<String>,
    pub zero: Option<usize>,
    #[serde(default)]
    pub ses: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryTable {
    pub name: String,
    pub objects: Vec<String>,
    pub zero: usize,
    /// Declared triples plus `(x, x, 0)` and `(0, x, x)` for every `x`,
    /// deduplicated and sorted.
    pub ses: Vec<[usize; 3]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubcategoryKind {
    Replete,
    Additive,
    /// Closed under quotients and extensions.
    Nullity,
    /// Closed under subobjects, quotients and extensions.
    Serre,
}

impl SubcategoryKind {
    pub const ALL: [SubcategoryKind; 4] =
        [SubcategoryKind::Replete, SubcategoryKind::Additive, SubcategoryKind::Nullity, SubcategoryKind::Serre];

    pub fn name(self) -> &'static str {
        match self {
            SubcategoryKind::Replete => "replete",
            SubcategoryKind::Additive => "additive",
            SubcategoryKind::Nullity => "nullity",
            SubcategoryKind::Serre => "serre",
        }
    }
}

impl std::str::FromStr for SubcategoryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SubcategoryKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownKind(s.to_string()))
    }
}

pub fn validate_table(doc: &TableDoc) -> Result<CategoryTable> {
    let n = doc.objects.len();
    let zero = doc.zero.ok_or(Error::MissingZero)?;
    if zero >= n {
        return Err(Error::MissingZero);
    }
    let mut seen = BTreeSet::new();
    for o in &doc.objects {
        if !seen.insert(o.as_str()) {
            return Err(Error::DuplicateLabel(o.clone()));
        }
    }
    let mut ses = BTreeSet::new();
    for triple in &doc.ses {
        if let Some(&bad) = triple.iter().find(|&&x| x >= n) {
            return Err(Error::UnknownObject(bad.to_string()));
        }
        ses.insert(*triple);
    }
    for x in 0..n {
        ses.insert([x, x, zero]);
        ses.insert([zero, x, x]);
    }
    Ok(CategoryTable {
        name: doc.name.clone(),
        objects: doc.objects.clone(),
        zero,
        ses: ses.into_iter().collect(),
    })
}

impl CategoryTable {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn object(&self, label: &str) -> Result<usize> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::UnknownObject(label.to_string()))
    }

    pub fn to_doc(&self) -> TableDoc {
        TableDoc { name: self.name.clone(), objects: self.objects.clone(), zero: Some(self.zero), ses: self.ses.clone() }
    }

    /// `{s : (s, y, q) is a declared sequence}`.
    pub fn subobjects(&self, y: usize) -> BTreeSet<usize> {
        self.ses.iter().filter(|t| t[1] == y).map(|t| t[0]).collect()
    }

    pub fn set_label(&self, set: &[usize]) -> String {
        let names: Vec<&str> = set.iter().map(|&o| self.objects[o].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Least subcategory of `kind` containing `seed`.
pub fn close(table: &CategoryTable, seed: &[usize], kind: SubcategoryKind) -> Result<Vec<usize>> {
    if let Some(&bad) = seed.iter().find(|&&x| x >= table.len()) {
        return Err(Error::UnknownObject(bad.to_string()));
    }
    let mut inside = vec![false; table.len()];
    for &x in seed {
        inside[x] = true;
    }
    if matches!(kind, SubcategoryKind::Nullity | SubcategoryKind::Serre) {
        let serre = kind == SubcategoryKind::Serre;
        loop {
            let mut changed = false;
            for &[s, x, q] in &table.ses {
                let mut add = |o: usize, inside: &mut Vec<bool>| {
                    if !inside[o] {
                        inside[o] = true;
                        changed = true;
                    }
                };
                if inside[x] {
                    add(q, &mut inside);
                    if serre {
                        add(s, &mut inside);
                    }
                }
                if inside[s] && inside[q] {
                    add(x, &mut inside);
                }
            }
            if !changed {
                break;
            }
        }
    }
    Ok((0..table.len()).filter(|&o| inside[o]).collect())
}

/// Every closed object-set of `kind`, ordered by inclusion. Elements are
/// sorted by size then lexicographically, and labelled by their objects.
pub fn enumerate_subcategory_lattice(table: &CategoryTable, kind: SubcategoryKind) -> Result<FiniteLattice> {
    let sets = subcategories(table, kind)?;
    let labels = sets.iter().map(|s| table.set_label(s)).collect();
    let name = match table.name.as_str() {
        "" => kind.name().to_string(),
        t => format!("{t} {}", kind.name()),
    };
    FiniteLattice::from_leq(name, labels, |a, b| sets[a].iter().all(|o| sets[b].contains(o)))
}

/// The closed object-sets of `kind` in lattice index order.
pub fn subcategories(table: &CategoryTable, kind: SubcategoryKind) -> Result<Vec<Vec<usize>>> {
    let n = table.len();
    if n > MAX_OBJECTS {
        return Err(Error::TooLarge { size: n, limit: MAX_OBJECTS });
    }
    let mut closed = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let seed: Vec<usize> = (0..n).filter(|&o| mask >> o & 1 == 1).collect();
        closed.insert(close(table, &seed, kind)?);
    }
    let mut sets: Vec<Vec<usize>> = closed.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(sets)
}

/// For each point of the subcategory lattice, a monoform object generating
/// it, if there is one. Points are given as lattice indices.
pub fn monoform_representatives(
    table: &CategoryTable,
    kind: SubcategoryKind,
) -> Result<Vec<(usize, Option<usize>)>> {
    let sets = subcategories(table, kind)?;
    let lattice = enumerate_subcategory_lattice(table, kind)?;
    let mut out = Vec::new();
    for c in lattice.elements() {
        if !crate::spectra::is_point(&lattice, c)? {
            continue;
        }
        let mut rep = None;
        for x in 0..table.len() {
            if close(table, &[x], kind)? == sets[c] && is_monoform(table, x)? {
                rep = Some(x);
                break;
            }
        }
        out.push((c, rep));
    }
    Ok(out)
}

/// Whether `x` shares no nonzero subobject with any of its proper nonzero
/// quotients.
///
/// "Trivial cases" are read as the sequences `(0, x, x)` and `(x, x, 0)`:
/// for every other declared `(s, x, q)`, the nonzero subobjects of `x` and
/// of `q` must be disjoint. This is the reading under which the three
/// indecomposables of the A2 path algebra all come out monoform.
pub fn is_monoform(table: &CategoryTable, x: usize) -> Result<bool> {
    if x >= table.len() {
        return Err(Error::UnknownObject(x.to_string()));
    }
    let subs_x = table.subobjects(x);
    Ok(table.ses.iter().filter(|t| t[1] == x && t[0] != table.zero && t[0] != x).all(|t| {
        table.subobjects(t[2]).iter().all(|&s| s == table.zero || !subs_x.contains(&s))
    }))
}

/// Powerset of `{p1, …, pn}`: every subset is a join of singletons, the
/// shape of a lattice of localizing subcategories classified by a discrete
/// set of primes.
pub fn powerset_model(n: usize) -> Result<FiniteLattice> {
    if n == 0 {
        return Err(Error::EmptyLattice);
    }
    if n > MAX_POWERSET {
        return Err(Error::TooLarge { size: n, limit: MAX_POWERSET });
    }
    let mut masks: Vec<u32> = (0..1u32 << n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>()));
    let labels = masks
        .iter()
        .map(|&m| {
            let names: Vec<String> = (0..n).filter(|&i| m >> i & 1 == 1).map(|i| format!("p{}", i + 1)).collect();
            format!("{{{}}}", names.join(","))
        })
        .collect();
    FiniteLattice::from_leq(format!("powerset({n})"), labels, |a, b| masks[a] & !masks[b] == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn names(t: &CategoryTable, set: &[usize]) -> String {
        t.set_label(set)
    }

    #[test]
    fn trivial_completion() {
        let t = corpus::a2_table();
        // (a,b,c), (0,0,0) and two trivial triples for each of a, b, c
        assert_eq!(t.ses.len(), 8);
        let bad = TableDoc { name: String::new(), objects: vec!["0".into()], zero: Some(0), ses: vec![[0, 3, 0]] };
        assert!(matches!(validate_table(&bad), Err(Error::UnknownObject(_))));
        let no_zero = TableDoc { zero: None, ..bad.clone() };
        assert!(matches!(validate_table(&no_zero), Err(Error::MissingZero)));
        let degenerate = TableDoc { ses: vec![], ..bad };
        assert_eq!(validate_table(&degenerate).unwrap().ses, vec![[0, 0, 0]]);
    }

    #[test]
    fn a2_closures() {
        let t = corpus::a2_table();
        let o = |s: &str| t.object(s).unwrap();
        assert_eq!(names(&t, &close(&t, &[o("b")], SubcategoryKind::Nullity).unwrap()), "{0,b,c}");
        assert_eq!(names(&t, &close(&t, &[o("b")], SubcategoryKind::Serre).unwrap()), "{0,a,b,c}");
        assert_eq!(names(&t, &close(&t, &[o("a"), o("c")], SubcategoryKind::Serre).unwrap()), "{0,a,b,c}");
        for kind in SubcategoryKind::ALL {
            assert!(close(&t, &[], kind).unwrap().is_empty());
        }
        assert!(close(&t, &[9], SubcategoryKind::Serre).is_err());
    }

    #[test]
    fn a2_lattices() {
        let t = corpus::a2_table();
        let nullity = enumerate_subcategory_lattice(&t, SubcategoryKind::Nullity).unwrap();
        assert_eq!(nullity.labels(), ["{}", "{0}", "{0,a}", "{0,c}", "{0,b,c}", "{0,a,b,c}"]);
        let serre = enumerate_subcategory_lattice(&t, SubcategoryKind::Serre).unwrap();
        assert_eq!(serre.labels(), ["{}", "{0}", "{0,a}", "{0,c}", "{0,a,b,c}"]);
        let replete = enumerate_subcategory_lattice(&t, SubcategoryKind::Replete).unwrap();
        assert_eq!(replete.len(), 16);
    }

    #[test]
    fn a2_objects_are_monoform() {
        let t = corpus::a2_table();
        for x in ["a", "b", "c"] {
            assert!(is_monoform(&t, t.object(x).unwrap()).unwrap(), "{x}");
        }
    }

    #[test]
    fn shared_subobject_breaks_monoform() {
        // 0 → s → x → q → 0 and 0 → s → q → r → 0
        let doc = TableDoc {
            name: "shared".into(),
            objects: ["0", "s", "x", "q", "r"].iter().map(|s| s.to_string()).collect(),
            zero: Some(0),
            ses: vec![[1, 2, 3], [1, 3, 4]],
        };
        let t = validate_table(&doc).unwrap();
        assert!(!is_monoform(&t, 2).unwrap());
        assert!(is_monoform(&t, 1).unwrap());
        assert!(is_monoform(&t, 9).is_err());
    }

    #[test]
    fn powerset_models() {
        let one = powerset_model(1).unwrap();
        assert_eq!(one.len(), 2);
        assert!(crate::hom::find_isomorphism(&one, &corpus::chain(2)).is_some());
        let four = powerset_model(4).unwrap();
        assert_eq!(four.len(), 16);
        assert_eq!(four.label(four.bottom()), "{}");
        assert_eq!(four.label(four.top()), "{p1,p2,p3,p4}");
        assert!(matches!(powerset_model(11), Err(Error::TooLarge { .. })));
    }
}

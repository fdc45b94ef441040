//! Finite lattices given by covering relations.
//!
//! A [`FiniteLattice`] is built once, validated eagerly, and never mutated.
//! Elements are identified by index; labels are only for presentation.
//! Binary join and meet are tabulated at construction, and joins/meets of
//! arbitrary subsets fold those tables (the empty join is the bottom, the
//! empty meet is the top).

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{BoundKind, Error, Result};

/// Largest lattice the engine will tabulate.
pub const MAX_ELEMENTS: usize = 1024;

/// A cover endpoint in a lattice document, either a 0-based index or a label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Label(String),
}

/// Lattice document: `{ "name", "elements", "covers": [[lower, upper]] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    #[serde(default)]
    pub name: String,
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[ElementRef; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ForbiddenShape {
    Pentagon,
    Diamond,
}

/// An embedded N5 or M3.
///
/// For a pentagon the elements are `[bottom, low, high, side, top]` with
/// `low < high` and `side` incomparable to both. For a diamond they are
/// `[bottom, x, y, z, top]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenSublattice {
    pub shape: ForbiddenShape,
    pub elements: [usize; 5],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributivityVerdict {
    pub distributive: bool,
    /// A triple `(a, b, c)` with `a ∨ (b ∧ c) ≠ (a ∨ b) ∧ (a ∨ c)`.
    pub witness: Option<[usize; 3]>,
    pub forbidden: Option<ForbiddenSublattice>,
}

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    name: String,
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.up == other.up
            && self.join == other.join
            && self.meet == other.meet
            && self.bottom == other.bottom
            && self.top == other.top
    }
}

impl Eq for FiniteLattice {}

pub fn load_lattice(doc: &LatticeDoc) -> Result<FiniteLattice> {
    FiniteLattice::from_doc(doc)
}

impl FiniteLattice {
    pub fn from_doc(doc: &LatticeDoc) -> Result<Self> {
        let n = doc.elements.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { size: n, limit: MAX_ELEMENTS });
        }
        let mut by_label = HashMap::with_capacity(n);
        for (i, label) in doc.elements.iter().enumerate() {
            if by_label.insert(label.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let resolve = |r: &ElementRef| -> Result<usize> {
            match r {
                ElementRef::Index(i) if *i < n => Ok(*i),
                ElementRef::Index(i) => Err(Error::UnknownElement(i.to_string())),
                ElementRef::Label(l) => by_label
                    .get(l.as_str())
                    .copied()
                    .ok_or_else(|| Error::UnknownElement(l.clone())),
            }
        };

        let mut succ = vec![Vec::new(); n];
        for [lo, hi] in &doc.covers {
            let (lo, hi) = (resolve(lo)?, resolve(hi)?);
            if lo == hi {
                return Err(Error::CycleError(doc.elements[lo].clone(), doc.elements[hi].clone()));
            }
            succ[lo].push(hi);
        }

        // reflexive-transitive closure by DFS from every element
        let mut up = Vec::with_capacity(n);
        for start in 0..n {
            let mut seen = FixedBitSet::with_capacity(n);
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &succ[v] {
                    if !seen.put(w) {
                        stack.push(w);
                    }
                }
            }
            up.push(seen);
        }
        Self::from_up_sets(doc.name.clone(), doc.elements.clone(), up)
    }

    /// Builds a lattice from an explicit order relation `leq(a, b)`.
    pub fn from_leq<F>(name: impl Into<String>, labels: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        if n > MAX_ELEMENTS {
            return Err(Error::TooLarge { size: n, limit: MAX_ELEMENTS });
        }
        let mut seen = HashMap::with_capacity(n);
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let up = (0..n)
            .map(|a| {
                let mut row = FixedBitSet::with_capacity(n);
                for b in 0..n {
                    if a == b || leq(a, b) {
                        row.insert(b);
                    }
                }
                row
            })
            .collect::<Vec<_>>();
        // transitivity is checked here since callers supply the full relation
        for a in 0..n {
            for b in up[a].ones() {
                if !up[b].is_subset(&up[a]) {
                    let c = up[b].difference(&up[a]).next().unwrap_or(b);
                    return Err(Error::NotAPartialOrder(format!(
                        "not transitive at {:?} <= {:?} <= {:?}",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
        Self::from_up_sets(name.into(), labels, up)
    }

    fn from_up_sets(name: String, labels: Vec<String>, up: Vec<FixedBitSet>) -> Result<Self> {
        let n = labels.len();
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter().enumerate() {
            for b in row.ones() {
                if a != b && up[b].contains(a) {
                    return Err(Error::CycleError(labels[a].clone(), labels[b].clone()));
                }
                down[b].insert(a);
            }
        }

        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let j = least_in(&up, &down, &intersect(&up[a], &up[b])).ok_or_else(|| {
                    Error::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        kind: BoundKind::Join,
                    }
                })?;
                let m = least_in(&down, &up, &intersect(&down[a], &down[b])).ok_or_else(|| {
                    Error::NotALattice {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                        kind: BoundKind::Meet,
                    }
                })?;
                join[a * n + b] = j;
                join[b * n + a] = j;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
            }
        }

        // bottom is below everything; with n=1 it is also the top
        let all = {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert_range(..);
            s
        };
        let bottom = least_in(&up, &down, &all).ok_or_else(|| Error::NotALattice {
            a: labels[0].clone(),
            b: labels[0].clone(),
            kind: BoundKind::Meet,
        })?;
        let top = least_in(&down, &up, &all).ok_or_else(|| Error::NotALattice {
            a: labels[0].clone(),
            b: labels[0].clone(),
            kind: BoundKind::Join,
        })?;

        let mut covers = Vec::new();
        for a in 0..n {
            for b in up[a].ones() {
                if a == b {
                    continue;
                }
                let between = up[a].intersection(&down[b]).count();
                if between == 2 {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();

        Ok(FiniteLattice { name, labels, up, down, covers, join, meet, bottom, top })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Index lookup that reports a missing label as [`Error::UnknownElement`].
    pub fn element(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    /// Join of any family of elements; the empty family gives the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of any family of elements; the empty family gives the top.
    pub fn meet_all<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    fn check(&self, a: usize) -> Result<usize> {
        if a < self.len() {
            Ok(a)
        } else {
            Err(Error::UnknownElement(a.to_string()))
        }
    }

    /// Least upper bound of `set`, validating every index.
    pub fn lattice_join(&self, set: &[usize]) -> Result<usize> {
        for &a in set {
            self.check(a)?;
        }
        Ok(self.join_all(set.iter().copied()))
    }

    /// Greatest lower bound of `set`, validating every index.
    pub fn lattice_meet(&self, set: &[usize]) -> Result<usize> {
        for &a in set {
            self.check(a)?;
        }
        Ok(self.meet_all(set.iter().copied()))
    }

    /// The principal ideal `{d : d <= c}`, ascending by index.
    pub fn down_set(&self, c: usize) -> Result<Vec<usize>> {
        self.check(c)?;
        Ok(self.down[c].ones().collect())
    }

    /// The principal filter `{d : d >= c}`, ascending by index.
    pub fn up_set(&self, c: usize) -> Result<Vec<usize>> {
        self.check(c)?;
        Ok(self.up[c].ones().collect())
    }

    /// Elements strictly below `c`.
    pub fn strictly_below(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.down[c].ones().filter(move |&d| d != c)
    }

    /// Number of covers below and above each element, and its rank (length
    /// of the longest chain down to the bottom).
    pub fn profile(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut lower = vec![0; n];
        let mut upper = vec![0; n];
        for &(a, b) in &self.covers {
            upper[a] += 1;
            lower[b] += 1;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| self.down[a].count_ones(..));
        let mut rank = vec![0; n];
        for &a in &order {
            for &(lo, hi) in &self.covers {
                if hi == a {
                    rank[a] = rank[a].max(rank[lo] + 1);
                }
            }
        }
        (0..n).map(|a| (lower[a], upper[a], rank[a])).collect()
    }

    /// Same elements with the order reversed; join and meet trade places.
    pub fn dualize(&self) -> FiniteLattice {
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        FiniteLattice {
            name,
            labels: self.labels.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
            covers,
            join: self.meet.clone(),
            meet: self.join.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }

    /// Exhaustive check of `a ∨ (b ∧ c) = (a ∨ b) ∧ (a ∨ c)`; a failure also
    /// carries an embedded pentagon or diamond.
    pub fn is_distributive(&self) -> DistributivityVerdict {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.join(a, self.meet(b, c));
                    let rhs = self.meet(self.join(a, b), self.join(a, c));
                    if lhs != rhs {
                        return DistributivityVerdict {
                            distributive: false,
                            witness: Some([a, b, c]),
                            forbidden: self.find_forbidden_sublattice(),
                        };
                    }
                }
            }
        }
        DistributivityVerdict { distributive: true, witness: None, forbidden: None }
    }

    /// Searches for an N5 first, then an M3.
    pub fn find_forbidden_sublattice(&self) -> Option<ForbiddenSublattice> {
        let n = self.len();
        for low in 0..n {
            for high in 0..n {
                if !self.lt(low, high) {
                    continue;
                }
                for side in 0..n {
                    if self.comparable(side, low) || self.comparable(side, high) {
                        continue;
                    }
                    let top = self.join(low, side);
                    let bottom = self.meet(high, side);
                    if top == self.join(high, side) && bottom == self.meet(low, side) {
                        return Some(ForbiddenSublattice {
                            shape: ForbiddenShape::Pentagon,
                            elements: [bottom, low, high, side, top],
                        });
                    }
                }
            }
        }
        for x in 0..n {
            for y in (x + 1)..n {
                if self.comparable(x, y) {
                    continue;
                }
                let top = self.join(x, y);
                let bottom = self.meet(x, y);
                for z in (y + 1)..n {
                    if self.comparable(x, z) || self.comparable(y, z) {
                        continue;
                    }
                    if self.join(x, z) == top
                        && self.join(y, z) == top
                        && self.meet(x, z) == bottom
                        && self.meet(y, z) == bottom
                    {
                        return Some(ForbiddenSublattice {
                            shape: ForbiddenShape::Diamond,
                            elements: [bottom, x, y, z, top],
                        });
                    }
                }
            }
        }
        None
    }

    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc {
            name: self.name.clone(),
            elements: self.labels.clone(),
            covers: self
                .covers
                .iter()
                .map(|&(a, b)| [ElementRef::Index(a), ElementRef::Index(b)])
                .collect(),
        }
    }

    /// Hasse diagram in Graphviz DOT, one edge per cover drawn lower to upper.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_quote(&self.name));
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label={}];", dot_quote(l));
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

pub(crate) fn dot_quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for ch in s.chars() {
        if ch == '"' || ch == '\\' {
            q.push('\\');
        }
        q.push(ch);
    }
    q.push('"');
    q
}

fn intersect(a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut s = a.clone();
    s.intersect_with(b);
    s
}

/// The least element of `set` with respect to the order whose up-sets are
/// `up` (and down-sets `down`), if it exists.
fn least_in(up: &[FixedBitSet], down: &[FixedBitSet], set: &FixedBitSet) -> Option<usize> {
    let candidate = set.ones().min_by_key(|&u| down[u].count_ones(..))?;
    set.is_subset(&up[candidate]).then_some(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(name: &str, elements: &[&str], covers: &[(usize, usize)]) -> LatticeDoc {
        LatticeDoc {
            name: name.into(),
            elements: elements.iter().map(|s| s.to_string()).collect(),
            covers: covers
                .iter()
                .map(|&(a, b)| [ElementRef::Index(a), ElementRef::Index(b)])
                .collect(),
        }
    }

    fn a2() -> FiniteLattice {
        load_lattice(&doc(
            "a2",
            &["∅", "⟨0⟩", "⟨a⟩", "⟨c⟩", "⟨b,c⟩", "𝒜"],
            &[(0, 1), (1, 2), (1, 3), (3, 4), (2, 5), (4, 5)],
        ))
        .unwrap()
    }

    #[test]
    fn chain_loads_with_bounds() {
        let l = load_lattice(&doc("chain", &["0", "1", "2"], &[(0, 1), (1, 2)])).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.bottom(), 0);
        assert_eq!(l.top(), 2);
        assert!(l.leq(0, 2));
    }

    #[test]
    fn a2_join_of_atoms_is_top() {
        let l = a2();
        assert_eq!(l.len(), 6);
        assert_eq!(l.lattice_join(&[2, 3]).unwrap(), 5);
        assert_eq!(l.lattice_join(&[]).unwrap(), l.bottom());
        assert_eq!(l.lattice_meet(&[]).unwrap(), l.top());
        assert!(matches!(l.lattice_join(&[9]), Err(Error::UnknownElement(_))));
    }

    #[test]
    fn labels_resolve_in_covers() {
        let d = LatticeDoc {
            name: "c".into(),
            elements: vec!["lo".into(), "hi".into()],
            covers: vec![[ElementRef::Label("lo".into()), ElementRef::Label("hi".into())]],
        };
        let l = load_lattice(&d).unwrap();
        assert!(l.leq(0, 1));
        let json = r#"{"name":"c","elements":["lo","hi"],"covers":[["lo",1]]}"#;
        let d: LatticeDoc = serde_json::from_str(json).unwrap();
        assert_eq!(load_lattice(&d).unwrap().top(), 1);
    }

    #[test]
    fn bowtie_is_not_a_lattice() {
        let err = load_lattice(&doc("bowtie", &["a", "b", "c", "d"], &[(0, 2), (0, 3), (1, 2), (1, 3)]))
            .unwrap_err();
        assert!(matches!(err, Error::NotALattice { .. }), "{err}");
    }

    #[test]
    fn cycles_and_duplicates_rejected() {
        let err = load_lattice(&doc("cyc", &["a", "b"], &[(0, 1), (1, 0)])).unwrap_err();
        assert!(matches!(err, Error::CycleError(..)));
        let err = load_lattice(&doc("self", &["a"], &[(0, 0)])).unwrap_err();
        assert!(matches!(err, Error::CycleError(..)));
        let err = load_lattice(&doc("dup", &["a", "a"], &[(0, 1)])).unwrap_err();
        assert!(matches!(err, Error::DuplicateLabel(_)));
        let err = load_lattice(&doc("bad", &["a"], &[(0, 4)])).unwrap_err();
        assert!(matches!(err, Error::UnknownElement(_)));
        assert!(matches!(load_lattice(&doc("e", &[], &[])), Err(Error::EmptyLattice)));
    }

    #[test]
    fn two_minimal_elements_rejected() {
        let err = load_lattice(&doc("v", &["a", "b", "t"], &[(0, 2), (1, 2)])).unwrap_err();
        assert!(matches!(err, Error::NotALattice { kind: BoundKind::Meet, .. }));
    }

    #[test]
    fn non_cover_pairs_are_closed_and_dropped() {
        let l = load_lattice(&doc("c", &["0", "1", "2"], &[(0, 1), (1, 2), (0, 2)])).unwrap();
        assert_eq!(l.covers(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn a2_has_a_pentagon() {
        let l = a2();
        let v = l.is_distributive();
        assert!(!v.distributive);
        assert!(v.witness.is_some());
        let f = v.forbidden.unwrap();
        assert_eq!(f.shape, ForbiddenShape::Pentagon);
        let mut els = f.elements.to_vec();
        els.sort_unstable();
        assert_eq!(els, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn diamond_detected() {
        let l = load_lattice(&doc(
            "m3",
            &["0", "x", "y", "z", "1"],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        ))
        .unwrap();
        let v = l.is_distributive();
        assert!(!v.distributive);
        assert_eq!(v.forbidden.unwrap().shape, ForbiddenShape::Diamond);
    }

    #[test]
    fn chain_is_distributive() {
        let l = load_lattice(&doc("chain", &["0", "1", "2"], &[(0, 1), (1, 2)])).unwrap();
        let v = l.is_distributive();
        assert!(v.distributive && v.witness.is_none() && v.forbidden.is_none());
    }

    #[test]
    fn down_sets() {
        let l = a2();
        assert_eq!(l.down_set(4).unwrap(), vec![0, 1, 3, 4]);
        assert_eq!(l.down_set(l.bottom()).unwrap(), vec![l.bottom()]);
        assert_eq!(l.down_set(l.top()).unwrap().len(), 6);
        assert!(l.down_set(6).is_err());
    }

    #[test]
    fn dual_is_involution_and_swaps_bounds() {
        let l = a2();
        let d = l.dualize();
        assert_eq!(d.bottom(), l.top());
        assert_eq!(d.name(), "a2^op");
        assert_eq!(d.dualize(), l);
        assert_eq!(d.dualize().name(), "a2");
        for c in l.elements() {
            assert_eq!(d.down_set(c).unwrap(), l.up_set(c).unwrap());
        }
        let chain = load_lattice(&doc("chain", &["0", "1", "2"], &[(0, 1), (1, 2)])).unwrap();
        let dc = chain.dualize();
        assert_eq!(dc.bottom(), 2);
        assert_eq!(dc.covers(), &[(1, 0), (2, 1)]);
    }

    #[test]
    fn dot_has_one_edge_per_cover() {
        let dot = a2().to_dot();
        assert_eq!(dot.matches("->").count(), 6);
        assert!(dot.contains("n3 -> n4;"));
        assert!(dot.starts_with("digraph \"a2\""));
    }

    #[test]
    fn doc_round_trip() {
        let l = a2();
        let json = serde_json::to_string(&l.to_doc()).unwrap();
        let back: LatticeDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(load_lattice(&back).unwrap(), l);
    }
}

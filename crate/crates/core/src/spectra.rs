//! Per-element classification: points, primes and irreducibles.
//!
//! Binary classes are decided by exhaustive pair checks. The "completely"
//! classes use the finite-lattice reduction (binary class plus not the
//! relevant bound), and [`oracle_completely`] decides them independently by
//! enumerating every subset, so the two can be compared.

use indexmap::IndexMap;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::space::SpaceKind;

/// Default element cap for the subset-enumeration oracle.
pub const ORACLE_CAP: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ElementClassification {
    pub element: usize,
    /// Join of everything strictly below the element.
    pub c_circle: usize,
    pub is_point: bool,
    pub join_prime: bool,
    pub meet_prime: bool,
    pub join_irreducible: bool,
    pub meet_irreducible: bool,
    /// Also called g-prime.
    pub completely_join_prime: bool,
    pub completely_meet_prime: bool,
    pub completely_join_irreducible: bool,
    pub completely_meet_irreducible: bool,
}

impl ElementClassification {
    /// The classification with join and meet interchanged; what the same
    /// element looks like in the dual lattice.
    ///
    /// `c_circle` and `is_point` are not dual notions and are left as-is.
    pub fn swapped(&self) -> Self {
        ElementClassification {
            join_prime: self.meet_prime,
            meet_prime: self.join_prime,
            join_irreducible: self.meet_irreducible,
            meet_irreducible: self.join_irreducible,
            completely_join_prime: self.completely_meet_prime,
            completely_meet_prime: self.completely_join_prime,
            completely_join_irreducible: self.completely_meet_irreducible,
            completely_meet_irreducible: self.completely_join_irreducible,
            ..*self
        }
    }
}

/// The four "completely" classes decided by [`oracle_completely`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompleteClass {
    JoinPrime,
    MeetPrime,
    JoinIrreducible,
    MeetIrreducible,
}

impl CompleteClass {
    pub const ALL: [CompleteClass; 4] = [
        CompleteClass::JoinPrime,
        CompleteClass::MeetPrime,
        CompleteClass::JoinIrreducible,
        CompleteClass::MeetIrreducible,
    ];

    pub fn flag(self, c: &ElementClassification) -> bool {
        match self {
            CompleteClass::JoinPrime => c.completely_join_prime,
            CompleteClass::MeetPrime => c.completely_meet_prime,
            CompleteClass::JoinIrreducible => c.completely_join_irreducible,
            CompleteClass::MeetIrreducible => c.completely_meet_irreducible,
        }
    }
}

pub fn c_circle(lattice: &FiniteLattice, c: usize) -> Result<usize> {
    check(lattice, c)?;
    Ok(lattice.join_all(lattice.strictly_below(c)))
}

pub fn is_point(lattice: &FiniteLattice, c: usize) -> Result<bool> {
    Ok(c_circle(lattice, c)? != c)
}

fn check(lattice: &FiniteLattice, c: usize) -> Result<()> {
    if c < lattice.len() {
        Ok(())
    } else {
        Err(Error::UnknownElement(c.to_string()))
    }
}

fn join_prime(l: &FiniteLattice, c: usize) -> bool {
    l.elements().all(|x| {
        (x..l.len()).all(|y| !l.leq(c, l.join(x, y)) || l.leq(c, x) || l.leq(c, y))
    })
}

fn meet_prime(l: &FiniteLattice, c: usize) -> bool {
    l.elements().all(|x| {
        (x..l.len()).all(|y| !l.leq(l.meet(x, y), c) || l.leq(x, c) || l.leq(y, c))
    })
}

fn join_irreducible(l: &FiniteLattice, c: usize) -> bool {
    l.elements()
        .all(|x| (x..l.len()).all(|y| l.join(x, y) != c || x == c || y == c))
}

fn meet_irreducible(l: &FiniteLattice, c: usize) -> bool {
    l.elements()
        .all(|x| (x..l.len()).all(|y| l.meet(x, y) != c || x == c || y == c))
}

pub fn classify_element(lattice: &FiniteLattice, c: usize) -> Result<ElementClassification> {
    let circle = c_circle(lattice, c)?;
    let jp = join_prime(lattice, c);
    let mp = meet_prime(lattice, c);
    let ji = join_irreducible(lattice, c);
    let mi = meet_irreducible(lattice, c);
    let not_bottom = c != lattice.bottom();
    let not_top = c != lattice.top();
    Ok(ElementClassification {
        element: c,
        c_circle: circle,
        is_point: circle != c,
        join_prime: jp,
        meet_prime: mp,
        join_irreducible: ji,
        meet_irreducible: mi,
        completely_join_prime: jp && not_bottom,
        completely_meet_prime: mp && not_top,
        completely_join_irreducible: ji && not_bottom,
        completely_meet_irreducible: mi && not_top,
    })
}

pub fn classify_all(lattice: &FiniteLattice) -> Vec<ElementClassification> {
    lattice
        .elements()
        .map(|c| classify_element(lattice, c).expect("index in range"))
        .collect()
}

/// Decides a "completely" class by checking the defining implication over
/// every subset of elements, the empty subset included.
pub fn oracle_completely(
    lattice: &FiniteLattice,
    c: usize,
    class: CompleteClass,
) -> Result<bool> {
    oracle_completely_capped(lattice, c, class, ORACLE_CAP)
}

pub fn oracle_completely_capped(
    lattice: &FiniteLattice,
    c: usize,
    class: CompleteClass,
    cap: usize,
) -> Result<bool> {
    let n = lattice.len();
    if n > cap {
        return Err(Error::TooLarge { size: n, limit: cap });
    }
    check(lattice, c)?;

    let meet_side = matches!(class, CompleteClass::MeetPrime | CompleteClass::MeetIrreducible);
    // folded[mask] is the join (or meet) of the subset encoded by mask
    let subsets = 1usize << n;
    let mut folded = vec![0usize; subsets];
    folded[0] = if meet_side { lattice.top() } else { lattice.bottom() };
    for mask in 1..subsets {
        let low = mask.trailing_zeros() as usize;
        let rest = folded[mask & (mask - 1)];
        folded[mask] = if meet_side { lattice.meet(rest, low) } else { lattice.join(rest, low) };
    }

    let members = |mask: usize| (0..n).filter(move |i| mask >> i & 1 == 1);
    let holds = (0..subsets).all(|mask| {
        let v = folded[mask];
        match class {
            CompleteClass::JoinPrime => !lattice.leq(c, v) || members(mask).any(|s| lattice.leq(c, s)),
            CompleteClass::MeetPrime => !lattice.leq(v, c) || members(mask).any(|s| lattice.leq(s, c)),
            CompleteClass::JoinIrreducible | CompleteClass::MeetIrreducible => {
                v != c || members(mask).any(|s| s == c)
            }
        }
    });
    Ok(holds)
}

#[derive(Debug, Clone)]
pub struct SpectrumReport<'a> {
    pub lattice: &'a FiniteLattice,
    pub elements: Vec<ElementClassification>,
    pub spaces: IndexMap<SpaceKind, Vec<usize>>,
}

pub fn spectrum_report(lattice: &FiniteLattice) -> SpectrumReport<'_> {
    let elements = classify_all(lattice);
    let spaces = SpaceKind::ALL
        .iter()
        .map(|&kind| {
            let pts = elements.iter().filter(|c| kind.admits(c)).map(|c| c.element).collect();
            (kind, pts)
        })
        .collect();
    SpectrumReport { lattice, elements, spaces }
}

impl SpectrumReport<'_> {
    pub fn points(&self, kind: SpaceKind) -> &[usize] {
        &self.spaces[&kind]
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let l = self.lattice;
        let mut out = String::new();
        let _ = writeln!(out, "lattice {} ({} elements)", l.name(), l.len());
        for c in &self.elements {
            let mut tags = Vec::new();
            for (flag, tag) in [
                (c.is_point, "point"),
                (c.join_prime, "jp"),
                (c.completely_join_prime, "g-prime"),
                (c.join_irreducible, "ji"),
                (c.completely_join_irreducible, "cji"),
                (c.meet_prime, "mp"),
                (c.completely_meet_prime, "cmp"),
                (c.meet_irreducible, "mi"),
                (c.completely_meet_irreducible, "cmi"),
            ] {
                if flag {
                    tags.push(tag);
                }
            }
            let _ = writeln!(
                out,
                "  {:<12} C°={:<12} {}",
                l.label(c.element),
                l.label(c.c_circle),
                tags.join(" ")
            );
        }
        for (kind, pts) in &self.spaces {
            let labels: Vec<&str> = pts.iter().map(|&p| l.label(p)).collect();
            let _ = writeln!(out, "  {:<30} {} [{}]", kind.name(), pts.len(), labels.join(", "));
        }
        out
    }
}

struct LabeledFlags<'r>(&'r FiniteLattice, &'r ElementClassification);

impl Serialize for LabeledFlags<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (l, c) = (self.0, self.1);
        let mut st = s.serialize_struct("ElementClassification", 10)?;
        st.serialize_field("c_circle", l.label(c.c_circle))?;
        st.serialize_field("is_point", &c.is_point)?;
        st.serialize_field("join_prime", &c.join_prime)?;
        st.serialize_field("meet_prime", &c.meet_prime)?;
        st.serialize_field("join_irreducible", &c.join_irreducible)?;
        st.serialize_field("meet_irreducible", &c.meet_irreducible)?;
        st.serialize_field("completely_join_prime", &c.completely_join_prime)?;
        st.serialize_field("completely_meet_prime", &c.completely_meet_prime)?;
        st.serialize_field("completely_join_irreducible", &c.completely_join_irreducible)?;
        st.serialize_field("completely_meet_irreducible", &c.completely_meet_irreducible)?;
        st.end()
    }
}

struct ElementMap<'r>(&'r SpectrumReport<'r>);

impl Serialize for ElementMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.0;
        let mut m = s.serialize_map(Some(r.elements.len()))?;
        for c in &r.elements {
            m.serialize_entry(r.lattice.label(c.element), &LabeledFlags(r.lattice, c))?;
        }
        m.end()
    }
}

struct SpaceMap<'r>(&'r SpectrumReport<'r>);

impl Serialize for SpaceMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.0;
        let mut m = s.serialize_map(Some(r.spaces.len()))?;
        for (kind, pts) in &r.spaces {
            let labels: Vec<&str> = pts.iter().map(|&p| r.lattice.label(p)).collect();
            m.serialize_entry(kind.name(), &labels)?;
        }
        m.end()
    }
}

impl Serialize for SpectrumReport<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SpectrumReport", 3)?;
        st.serialize_field("lattice", self.lattice.name())?;
        st.serialize_field("elements", &ElementMap(self))?;
        st.serialize_field("spaces", &SpaceMap(self))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn c_circle_on_a2() {
        let l = corpus::a2_nullity();
        let bc = l.element("⟨b,c⟩").unwrap();
        assert_eq!(c_circle(&l, bc).unwrap(), l.element("⟨c⟩").unwrap());
        assert_eq!(c_circle(&l, l.top()).unwrap(), l.top());
        assert_eq!(c_circle(&l, l.bottom()).unwrap(), l.bottom());
        assert!(c_circle(&l, 17).is_err());
    }

    #[test]
    fn a2_points_and_primes() {
        let l = corpus::a2_nullity();
        let names = |pred: &dyn Fn(&ElementClassification) -> bool| -> Vec<String> {
            classify_all(&l).iter().filter(|c| pred(c)).map(|c| l.label(c.element).to_string()).collect()
        };
        assert_eq!(names(&|c| c.is_point), ["⟨0⟩", "⟨a⟩", "⟨c⟩", "⟨b,c⟩"]);
        assert_eq!(names(&|c| c.completely_join_prime), ["⟨0⟩", "⟨a⟩", "⟨c⟩"]);
        let bc = classify_element(&l, l.element("⟨b,c⟩").unwrap()).unwrap();
        assert!(!bc.join_prime);
    }

    #[test]
    fn powerset_points_are_singletons() {
        let l = corpus::powerset(3);
        for c in classify_all(&l) {
            let size = l.label(c.element).matches('p').count();
            assert_eq!(c.is_point, size == 1, "{}", l.label(c.element));
        }
    }

    #[test]
    fn m3_atoms_irreducible_not_prime() {
        let l = corpus::m3();
        for atom in 1..4 {
            let c = classify_element(&l, atom).unwrap();
            assert!(c.join_irreducible);
            assert!(!c.join_prime);
        }
    }

    #[test]
    fn bottom_is_vacuously_prime_only() {
        for l in [corpus::a2_nullity(), corpus::m3(), corpus::chain(4)] {
            let c = classify_element(&l, l.bottom()).unwrap();
            assert!(c.join_prime);
            assert!(!c.completely_join_prime);
            assert!(!c.is_point);
            assert!(!oracle_completely(&l, l.bottom(), CompleteClass::JoinPrime).unwrap());
        }
    }

    #[test]
    fn oracle_examples() {
        let l = corpus::a2_nullity();
        let a = l.element("⟨a⟩").unwrap();
        assert!(oracle_completely(&l, a, CompleteClass::JoinPrime).unwrap());
        let chain = corpus::chain(3);
        assert!(oracle_completely(&chain, 2, CompleteClass::JoinIrreducible).unwrap());
        let big = corpus::chain(16);
        assert!(matches!(
            oracle_completely(&big, 0, CompleteClass::JoinPrime),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn report_counts() {
        let l = corpus::a2_nullity();
        let r = spectrum_report(&l);
        assert_eq!(r.points(SpaceKind::K).len(), 4);
        assert_eq!(r.points(SpaceKind::Kgp).len(), 3);
        for n in 1..=6 {
            let chain = corpus::chain(n);
            assert_eq!(spectrum_report(&chain).points(SpaceKind::K).len(), n - 1);
        }
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["elements"]["⟨b,c⟩"]["c_circle"], "⟨c⟩");
        assert_eq!(json["spaces"]["kgp"].as_array().unwrap().len(), 3);
    }
}

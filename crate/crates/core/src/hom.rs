//! Maps between finite lattices, checked exhaustively.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;

/// Strongest preservation property a map was verified to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HomLevel {
    Order,
    Lattice,
    /// Binary joins and meets plus the empty join and empty meet, which in a
    /// finite lattice covers every subset.
    Complete,
}

/// The first failure found when testing the next level up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HomViolation {
    Join { a: usize, b: usize },
    Meet { a: usize, b: usize },
    /// `f(bottom) != bottom`
    EmptyJoin,
    /// `f(top) != top`
    EmptyMeet,
}

#[derive(Debug, Clone)]
pub struct LatticeHom<'a> {
    source: &'a FiniteLattice,
    target: &'a FiniteLattice,
    map: Vec<usize>,
    level: HomLevel,
    violation: Option<HomViolation>,
}

impl<'a> LatticeHom<'a> {
    pub fn source(&self) -> &'a FiniteLattice {
        self.source
    }

    pub fn target(&self) -> &'a FiniteLattice {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn level(&self) -> HomLevel {
        self.level
    }

    pub fn violation(&self) -> Option<HomViolation> {
        self.violation
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.len() != self.target.len() {
            return false;
        }
        let mut hit = vec![false; self.target.len()];
        for &b in &self.map {
            if std::mem::replace(&mut hit[b], true) {
                return false;
            }
        }
        true
    }

    /// A complete homomorphism that is a bijection. Its inverse is then also
    /// monotone, since a bijective lattice homomorphism reflects order.
    pub fn is_isomorphism(&self) -> bool {
        self.level == HomLevel::Complete
            && self.is_bijective()
            && self.source.elements().all(|a| {
                self.source
                    .elements()
                    .all(|b| self.source.leq(a, b) == self.target.leq(self.map[a], self.map[b]))
            })
    }

    pub fn identity(lattice: &'a FiniteLattice) -> Self {
        LatticeHom {
            source: lattice,
            target: lattice,
            map: lattice.elements().collect(),
            level: HomLevel::Complete,
            violation: None,
        }
    }

    /// `then ∘ self`, re-verified.
    pub fn then(&self, then: &LatticeHom<'a>) -> Result<LatticeHom<'a>> {
        if !std::ptr::eq(self.target, then.source) && self.target != then.source {
            return Err(Error::InvalidMap("homomorphisms are not composable".into()));
        }
        let map = self.map.iter().map(|&a| then.map[a]).collect();
        check_hom(map, self.source, then.target)
    }
}

/// Verifies `map : source → target` and records the strongest level it
/// reaches. Fails only when the map is not even monotone.
pub fn check_hom<'a>(
    map: Vec<usize>,
    source: &'a FiniteLattice,
    target: &'a FiniteLattice,
) -> Result<LatticeHom<'a>> {
    if map.len() != source.len() {
        return Err(Error::InvalidMap(format!(
            "map has {} entries, source has {} elements",
            map.len(),
            source.len()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&b| b >= target.len()) {
        return Err(Error::InvalidMap(format!("image {bad} is outside the target")));
    }

    for a in source.elements() {
        for b in source.elements() {
            if source.leq(a, b) && !target.leq(map[a], map[b]) {
                return Err(Error::NotMonotone {
                    a: source.label(a).to_string(),
                    b: source.label(b).to_string(),
                });
            }
        }
    }

    let mut violation = None;
    'pairs: for a in source.elements() {
        for b in a..source.len() {
            if map[source.join(a, b)] != target.join(map[a], map[b]) {
                violation = Some(HomViolation::Join { a, b });
                break 'pairs;
            }
            if map[source.meet(a, b)] != target.meet(map[a], map[b]) {
                violation = Some(HomViolation::Meet { a, b });
                break 'pairs;
            }
        }
    }
    if violation.is_none() {
        if map[source.bottom()] != target.bottom() {
            violation = Some(HomViolation::EmptyJoin);
        } else if map[source.top()] != target.top() {
            violation = Some(HomViolation::EmptyMeet);
        }
    }
    let level = match violation {
        None => HomLevel::Complete,
        Some(HomViolation::EmptyJoin | HomViolation::EmptyMeet) => HomLevel::Lattice,
        Some(_) => HomLevel::Order,
    };
    Ok(LatticeHom { source, target, map, level, violation })
}

/// Backtracking search for an order-isomorphism, pruned by each element's
/// cover degrees and rank. A hit is re-verified through [`check_hom`].
pub fn find_isomorphism<'a>(
    first: &'a FiniteLattice,
    second: &'a FiniteLattice,
) -> Option<LatticeHom<'a>> {
    let n = first.len();
    if n != second.len() || first.covers().len() != second.covers().len() {
        return None;
    }
    let p1 = first.profile();
    let p2 = second.profile();
    let mut s1 = p1.clone();
    let mut s2 = p2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }

    let mut order: Vec<usize> = first.elements().collect();
    order.sort_by_key(|&a| (p1[a].2, a));

    struct Search<'s> {
        first: &'s FiniteLattice,
        second: &'s FiniteLattice,
        p1: &'s [(usize, usize, usize)],
        p2: &'s [(usize, usize, usize)],
        order: &'s [usize],
        map: Vec<usize>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize) -> bool {
            if depth == self.order.len() {
                return true;
            }
            let e = self.order[depth];
            for c in 0..self.second.len() {
                if self.used[c] || self.p2[c] != self.p1[e] {
                    continue;
                }
                let consistent = self.order[..depth].iter().all(|&u| {
                    let fu = self.map[u];
                    self.first.leq(u, e) == self.second.leq(fu, c)
                        && self.first.leq(e, u) == self.second.leq(c, fu)
                });
                if !consistent {
                    continue;
                }
                self.map[e] = c;
                self.used[c] = true;
                if self.run(depth + 1) {
                    return true;
                }
                self.used[c] = false;
            }
            false
        }
    }

    let mut search = Search {
        first,
        second,
        p1: &p1,
        p2: &p2,
        order: &order,
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if !search.run(0) {
        return None;
    }
    let hom = check_hom(search.map, first, second).ok()?;
    hom.is_isomorphism().then_some(hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_is_complete() {
        let l = corpus::a2_nullity();
        let h = check_hom(l.elements().collect(), &l, &l).unwrap();
        assert_eq!(h.level(), HomLevel::Complete);
        assert!(h.is_isomorphism());
    }

    #[test]
    fn constant_bottom_fails_empty_meet() {
        let l = corpus::chain(3);
        let h = check_hom(vec![0, 0, 0], &l, &l).unwrap();
        assert_eq!(h.level(), HomLevel::Lattice);
        assert_eq!(h.violation(), Some(HomViolation::EmptyMeet));
    }

    #[test]
    fn chain_inclusion_into_a2() {
        // ∅ < ⟨0⟩ < ⟨a⟩ < 𝒜 is a sublattice of the nullity lattice
        let chain = corpus::chain(4);
        let a2 = corpus::a2_nullity();
        let h = check_hom(vec![0, 1, 2, 5], &chain, &a2).unwrap();
        assert_eq!(h.level(), HomLevel::Complete);
    }

    #[test]
    fn non_monotone_rejected() {
        let l = corpus::chain(3);
        let err = check_hom(vec![2, 1, 0], &l, &l).unwrap_err();
        assert!(matches!(err, Error::NotMonotone { .. }));
        assert!(matches!(check_hom(vec![0, 1], &l, &l), Err(Error::InvalidMap(_))));
        assert!(matches!(check_hom(vec![0, 1, 7], &l, &l), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn join_failure_detected() {
        // M3 onto chain 0<1<2 sending every atom to the middle breaks joins
        let m3 = corpus::m3();
        let chain = corpus::chain(3);
        let h = check_hom(vec![0, 1, 1, 1, 2], &m3, &chain).unwrap();
        assert_eq!(h.level(), HomLevel::Order);
        assert!(matches!(h.violation(), Some(HomViolation::Join { .. })));
    }

    #[test]
    fn isomorphism_search() {
        let a2 = corpus::a2_nullity();
        let shuffled = corpus::relabel_permuted(&a2, &[3, 5, 0, 1, 4, 2]);
        let iso = find_isomorphism(&a2, &shuffled).expect("permuted copy is isomorphic");
        assert_eq!(iso.level(), HomLevel::Complete);
        assert!(find_isomorphism(&corpus::chain(3), &corpus::m3()).is_none());
        assert!(find_isomorphism(&corpus::n5(), &corpus::m3()).is_none());
    }

    #[test]
    fn composition_is_verified() {
        let c3 = corpus::chain(3);
        let c2 = corpus::chain(2);
        let f = check_hom(vec![0, 1, 1], &c3, &c2).unwrap();
        let g = check_hom(vec![0, 2], &c2, &c3).unwrap();
        let gf = f.then(&g).unwrap();
        assert_eq!(gf.map(), &[0, 2, 2]);
        assert_eq!(gf.level(), HomLevel::Complete);
    }
}

//! Classifying spaces built from a lattice.
//!
//! Every kind of space has the same shape: a set of lattice elements as
//! points, and one candidate closed set per lattice element `C`. Join-side
//! kinds take the points below `C`, meet-side kinds the points above it.
//! The family is deduplicated by point subset, a formal empty set is added
//! when no element generates it, and union/intersection closure is then
//! checked rather than assumed. For `K` on a non-distributive lattice that
//! check can fail, and the space is returned with the counterexample.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hom::{HomLevel, LatticeHom};
use crate::lattice::{dot_quote, FiniteLattice};
use crate::spectra::{classify_all, ElementClassification};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceKind {
    /// Points `P_C` with `C ≠ C°`.
    K,
    /// Join-prime points.
    Kp,
    /// Completely join-prime (g-prime) points; the same space as the
    /// completely-join-prime point-free kind.
    Kgp,
    MeetPrime,
    CompletelyMeetPrime,
    /// Join-prime elements, point condition not imposed.
    JoinPrime,
    MeetIrreducible,
    CompletelyMeetIrreducible,
    JoinIrreducible,
    CompletelyJoinIrreducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Closed set of `C` is the points below `C`.
    Join,
    /// Closed set of `C` is the points above `C`.
    Meet,
}

impl SpaceKind {
    pub const ALL: [SpaceKind; 10] = [
        SpaceKind::K,
        SpaceKind::Kp,
        SpaceKind::Kgp,
        SpaceKind::MeetPrime,
        SpaceKind::CompletelyMeetPrime,
        SpaceKind::JoinPrime,
        SpaceKind::MeetIrreducible,
        SpaceKind::CompletelyMeetIrreducible,
        SpaceKind::JoinIrreducible,
        SpaceKind::CompletelyJoinIrreducible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::K => "k",
            SpaceKind::Kp => "kp",
            SpaceKind::Kgp => "kgp",
            SpaceKind::MeetPrime => "meet-prime",
            SpaceKind::CompletelyMeetPrime => "completely-meet-prime",
            SpaceKind::JoinPrime => "join-prime",
            SpaceKind::MeetIrreducible => "meet-irreducible",
            SpaceKind::CompletelyMeetIrreducible => "completely-meet-irreducible",
            SpaceKind::JoinIrreducible => "join-irreducible",
            SpaceKind::CompletelyJoinIrreducible => "completely-join-irreducible",
        }
    }

    pub fn side(self) -> Side {
        match self {
            SpaceKind::MeetPrime
            | SpaceKind::CompletelyMeetPrime
            | SpaceKind::MeetIrreducible
            | SpaceKind::CompletelyMeetIrreducible => Side::Meet,
            _ => Side::Join,
        }
    }

    /// Membership predicate for the point set.
    pub fn admits(self, c: &ElementClassification) -> bool {
        match self {
            SpaceKind::K => c.is_point,
            SpaceKind::Kp => c.is_point && c.join_prime,
            SpaceKind::Kgp => c.completely_join_prime,
            SpaceKind::MeetPrime => c.meet_prime,
            SpaceKind::CompletelyMeetPrime => c.completely_meet_prime,
            SpaceKind::JoinPrime => c.join_prime,
            SpaceKind::MeetIrreducible => c.meet_irreducible,
            SpaceKind::CompletelyMeetIrreducible => c.completely_meet_irreducible,
            SpaceKind::JoinIrreducible => c.join_irreducible,
            SpaceKind::CompletelyJoinIrreducible => c.completely_join_irreducible,
        }
    }

    /// The kind that describes the same points in the dual lattice.
    /// `K` and `Kp` carry the point condition, which has no meet-side
    /// counterpart here.
    pub fn dual(self) -> Option<SpaceKind> {
        Some(match self {
            SpaceKind::MeetPrime => SpaceKind::JoinPrime,
            SpaceKind::JoinPrime => SpaceKind::MeetPrime,
            SpaceKind::CompletelyMeetPrime => SpaceKind::Kgp,
            SpaceKind::Kgp => SpaceKind::CompletelyMeetPrime,
            SpaceKind::MeetIrreducible => SpaceKind::JoinIrreducible,
            SpaceKind::JoinIrreducible => SpaceKind::MeetIrreducible,
            SpaceKind::CompletelyMeetIrreducible => SpaceKind::CompletelyJoinIrreducible,
            SpaceKind::CompletelyJoinIrreducible => SpaceKind::CompletelyMeetIrreducible,
            SpaceKind::K | SpaceKind::Kp => return None,
        })
    }

    /// Kinds whose closed family is a topology on every lattice.
    pub fn always_topological(self) -> bool {
        matches!(
            self,
            SpaceKind::Kp
                | SpaceKind::Kgp
                | SpaceKind::JoinPrime
                | SpaceKind::MeetPrime
                | SpaceKind::CompletelyMeetPrime
        )
    }
}

impl FromStr for SpaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        if let Some(kind) = SpaceKind::ALL.iter().find(|k| k.name() == norm) {
            return Ok(*kind);
        }
        match norm.as_str() {
            "g-prime" | "gprime" | "completely-join-prime" => Ok(SpaceKind::Kgp),
            _ => Err(Error::UnknownKind(s.to_string())),
        }
    }
}

impl std::fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for SpaceKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// A member of a closed family together with every element generating it.
/// The formal empty set has no generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedSet {
    pub generators: Vec<usize>,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SetOperation {
    Union,
    Intersection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyViolation {
    pub operation: SetOperation,
    pub generators: (usize, usize),
    pub result: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyCheck {
    pub ok: bool,
    pub counterexample: Option<TopologyViolation>,
}

#[derive(Debug, Clone)]
pub struct ClassifyingSpace<'a> {
    pub lattice: &'a FiniteLattice,
    pub kind: SpaceKind,
    pub points: Vec<usize>,
    /// Canonical order: by size, then lexicographically by point index.
    pub closed_family: Vec<ClosedSet>,
    pub topology: TopologyCheck,
    pub t0: bool,
}

fn generated(lattice: &FiniteLattice, side: Side, points: &[usize], c: usize) -> Vec<usize> {
    points
        .iter()
        .copied()
        .filter(|&p| match side {
            Side::Join => lattice.leq(p, c),
            Side::Meet => lattice.leq(c, p),
        })
        .collect()
}

fn canonical(a: &[usize], b: &[usize]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

pub fn build_space(lattice: &FiniteLattice, kind: SpaceKind) -> ClassifyingSpace<'_> {
    let classes = classify_all(lattice);
    build_space_with(lattice, kind, &classes)
}

pub(crate) fn build_space_with<'a>(
    lattice: &'a FiniteLattice,
    kind: SpaceKind,
    classes: &[ElementClassification],
) -> ClassifyingSpace<'a> {
    let points: Vec<usize> = classes.iter().filter(|c| kind.admits(c)).map(|c| c.element).collect();
    let mut family: Vec<ClosedSet> = Vec::new();
    for c in lattice.elements() {
        let set = generated(lattice, kind.side(), &points, c);
        match family.iter_mut().find(|s| s.points == set) {
            Some(existing) => existing.generators.push(c),
            None => family.push(ClosedSet { generators: vec![c], points: set }),
        }
    }
    if !family.iter().any(|s| s.points.is_empty()) {
        family.push(ClosedSet { generators: Vec::new(), points: Vec::new() });
    }
    family.sort_by(|a, b| canonical(&a.points, &b.points));

    let topology = check_topology(&family);
    let t0 = separates_points(&points, family.iter().map(|s| s.points.as_slice()));
    ClassifyingSpace { lattice, kind, points, closed_family: family, topology, t0 }
}

/// Pairwise union and intersection closure; enough for a finite family.
pub fn check_topology(family: &[ClosedSet]) -> TopologyCheck {
    let members: BTreeSet<&[usize]> = family.iter().map(|s| s.points.as_slice()).collect();
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            let left: BTreeSet<usize> = a.points.iter().copied().collect();
            let right: BTreeSet<usize> = b.points.iter().copied().collect();
            let generators = (
                a.generators.first().copied().unwrap_or(usize::MAX),
                b.generators.first().copied().unwrap_or(usize::MAX),
            );
            for (operation, result) in [
                (SetOperation::Union, left.union(&right).copied().collect::<Vec<_>>()),
                (SetOperation::Intersection, left.intersection(&right).copied().collect()),
            ] {
                if !members.contains(result.as_slice()) {
                    return TopologyCheck {
                        ok: false,
                        counterexample: Some(TopologyViolation { operation, generators, result }),
                    };
                }
            }
        }
    }
    TopologyCheck { ok: true, counterexample: None }
}

/// True iff no two distinct points belong to exactly the same members.
pub fn separates_points<'s, I>(points: &[usize], family: I) -> bool
where
    I: IntoIterator<Item = &'s [usize]>,
{
    let family: Vec<&[usize]> = family.into_iter().collect();
    let signature = |p: usize| -> Vec<bool> { family.iter().map(|s| s.binary_search(&p).is_ok()).collect() };
    let sigs: Vec<Vec<bool>> = points.iter().map(|&p| signature(p)).collect();
    let unique: BTreeSet<&Vec<bool>> = sigs.iter().collect();
    unique.len() == sigs.len()
}

pub fn is_t0(space: &ClassifyingSpace<'_>) -> bool {
    separates_points(&space.points, space.closed_family.iter().map(|s| s.points.as_slice()))
}

impl ClassifyingSpace<'_> {
    pub fn closed_sets(&self) -> impl Iterator<Item = &[usize]> {
        self.closed_family.iter().map(|s| s.points.as_slice())
    }

    pub fn contains_closed(&self, set: &[usize]) -> bool {
        self.closed_sets().any(|s| s == set)
    }

    /// `p ≤ q` in the specialization order: every closed set holding `q`
    /// also holds `p`.
    pub fn specializes(&self, p: usize, q: usize) -> bool {
        self.closed_sets()
            .all(|s| s.binary_search(&q).is_err() || s.binary_search(&p).is_ok())
    }

    pub fn labels(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&p| self.lattice.label(p).to_string()).collect()
    }

    /// Specialization order of the points as a Hasse diagram.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let title = format!("{} {}", self.lattice.name(), self.kind.name());
        let _ = writeln!(out, "digraph {} {{", dot_quote(&title));
        let _ = writeln!(out, "  rankdir=BT;");
        for &p in &self.points {
            let _ = writeln!(out, "  n{p} [label={}];", dot_quote(self.lattice.label(p)));
        }
        for &p in &self.points {
            for &q in &self.points {
                if p == q || !self.specializes(p, q) {
                    continue;
                }
                if self.specializes(q, p) {
                    if p < q {
                        let _ = writeln!(out, "  n{p} -> n{q} [dir=none, style=dashed];");
                    }
                    continue;
                }
                let covered = self.points.iter().all(|&r| {
                    r == p
                        || r == q
                        || !(self.specializes(p, r)
                            && self.specializes(r, q)
                            && !self.specializes(r, p)
                            && !self.specializes(q, r))
                });
                if covered {
                    let _ = writeln!(out, "  n{p} -> n{q};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for ClassifyingSpace<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ClassifyingSpace", 6)?;
        st.serialize_field("kind", self.kind.name())?;
        st.serialize_field("points", &self.labels(&self.points))?;
        let closed: Vec<Vec<String>> = self.closed_sets().map(|c| self.labels(c)).collect();
        st.serialize_field("closed_sets", &closed)?;
        st.serialize_field("topology_ok", &self.topology.ok)?;
        st.serialize_field("t0", &self.t0)?;
        let counter = self.topology.counterexample.as_ref().map(|v| {
            serde_json::json!({
                "operation": v.operation,
                "generators": [self.lattice.label(v.generators.0), self.lattice.label(v.generators.1)],
                "result": self.labels(&v.result),
            })
        });
        st.serialize_field("counterexample", &counter)?;
        st.end()
    }
}

/// Element classes a hat operator can be taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinClass {
    JoinPrime,
    GPrime,
    JoinIrreducible,
    CompletelyJoinIrreducible,
}

impl JoinClass {
    pub const ALL: [JoinClass; 4] = [
        JoinClass::JoinPrime,
        JoinClass::GPrime,
        JoinClass::JoinIrreducible,
        JoinClass::CompletelyJoinIrreducible,
    ];

    pub fn kind(self) -> SpaceKind {
        match self {
            JoinClass::JoinPrime => SpaceKind::JoinPrime,
            JoinClass::GPrime => SpaceKind::Kgp,
            JoinClass::JoinIrreducible => SpaceKind::JoinIrreducible,
            JoinClass::CompletelyJoinIrreducible => SpaceKind::CompletelyJoinIrreducible,
        }
    }
}

/// Join of all elements of `class` below `c`.
pub fn hat(lattice: &FiniteLattice, c: usize, class: JoinClass) -> Result<usize> {
    if c >= lattice.len() {
        return Err(Error::UnknownElement(c.to_string()));
    }
    let classes = classify_all(lattice);
    let kind = class.kind();
    Ok(lattice.join_all(
        classes.iter().filter(|k| kind.admits(k) && lattice.leq(k.element, c)).map(|k| k.element),
    ))
}

/// Outcome of checking the closed-set / fixed-element correspondence.
///
/// `closed_sets` is the family generated by lattice elements, which is the
/// domain of `theta`. When the point set contains the bottom (vacuous join
/// primes and irreducibles), the space's formal empty set is not generated
/// and is reported through `formal_empty_outside`.
#[derive(Debug, Clone)]
pub struct ClassificationReport<'a> {
    pub lattice: &'a FiniteLattice,
    pub kind: SpaceKind,
    pub closed_sets: Vec<Vec<usize>>,
    pub fixed: Vec<usize>,
    /// `theta[i]` is the join (meet, for meet kinds) of `closed_sets[i]`.
    pub theta: Vec<usize>,
    /// `xi[j]` indexes the closed set generated by `fixed[j]`.
    pub xi: Vec<usize>,
    pub round_trip_ok: bool,
    pub formal_empty_outside: bool,
    pub failure: Option<String>,
}

/// Builds theta (closed set to element) and xi (element to closed set) and
/// checks that they are mutually inverse, monotone bijections.
///
/// Meet kinds are handled on the dual lattice with the dual kind, so their
/// closed sets are up-sets and theta takes meets.
pub fn verify_classification(lattice: &FiniteLattice, kind: SpaceKind) -> ClassificationReport<'_> {
    let (closed_sets, fixed, theta, xi, failure) = match (kind.side(), kind.dual()) {
        (Side::Meet, Some(dual_kind)) => correspond(&lattice.dualize(), dual_kind),
        _ => correspond(lattice, kind),
    };
    let formal_empty_outside = !closed_sets.iter().any(|s| s.is_empty());
    ClassificationReport {
        lattice,
        kind,
        closed_sets,
        fixed,
        theta,
        xi,
        round_trip_ok: failure.is_none(),
        formal_empty_outside,
        failure,
    }
}

type Correspondence = (Vec<Vec<usize>>, Vec<usize>, Vec<usize>, Vec<usize>, Option<String>);

fn correspond(lattice: &FiniteLattice, kind: SpaceKind) -> Correspondence {
    let classes = classify_all(lattice);
    let points: Vec<usize> = classes.iter().filter(|c| kind.admits(c)).map(|c| c.element).collect();
    let xi_of = |c: usize| generated(lattice, Side::Join, &points, c);

    let mut closed_sets: Vec<Vec<usize>> = lattice.elements().map(xi_of).collect();
    closed_sets.sort_by(|a, b| canonical(a, b));
    closed_sets.dedup();

    let theta: Vec<usize> = closed_sets.iter().map(|s| lattice.join_all(s.iter().copied())).collect();
    let fixed: Vec<usize> =
        lattice.elements().filter(|&c| lattice.join_all(xi_of(c)) == c).collect();

    let mut failure = None;
    let mut fail = |msg: String| {
        if failure.is_none() {
            failure = Some(msg);
        }
    };
    let mut xi = Vec::with_capacity(fixed.len());
    for &c in &fixed {
        let set = xi_of(c);
        match closed_sets.iter().position(|s| *s == set) {
            Some(i) => {
                xi.push(i);
                if theta[i] != c {
                    fail(format!("theta(xi({})) != {}", lattice.label(c), lattice.label(c)));
                }
            }
            None => fail(format!("xi({}) is not a generated closed set", lattice.label(c))),
        }
    }
    for (i, set) in closed_sets.iter().enumerate() {
        let image = theta[i];
        if !fixed.contains(&image) {
            fail(format!("theta of closed set {i} is not a fixed element"));
        } else if xi_of(image) != *set {
            fail(format!("xi(theta(S)) != S for closed set {i}"));
        }
    }
    if fixed.len() != closed_sets.len() {
        fail(format!("{} fixed elements but {} closed sets", fixed.len(), closed_sets.len()));
    }
    for (i, s) in closed_sets.iter().enumerate() {
        for (j, t) in closed_sets.iter().enumerate() {
            if s.iter().all(|p| t.binary_search(p).is_ok()) && !lattice.leq(theta[i], theta[j]) {
                fail(format!("theta is not monotone on closed sets {i} and {j}"));
            }
        }
    }
    for &c in &fixed {
        for &d in &fixed {
            if lattice.leq(c, d) {
                let (sc, sd) = (xi_of(c), xi_of(d));
                if !sc.iter().all(|p| sd.binary_search(p).is_ok()) {
                    fail(format!("xi is not monotone on {} and {}", lattice.label(c), lattice.label(d)));
                }
            }
        }
    }
    (closed_sets, fixed, theta, xi, failure)
}

impl Serialize for ClassificationReport<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let l = self.lattice;
        let label_set = |set: &[usize]| -> Vec<&str> { set.iter().map(|&p| l.label(p)).collect() };
        let mut st = s.serialize_struct("ClassificationReport", 6)?;
        st.serialize_field("kind", self.kind.name())?;
        let pairs: Vec<serde_json::Value> = self
            .closed_sets
            .iter()
            .zip(&self.theta)
            .map(|(set, &t)| serde_json::json!({ "closed_set": label_set(set), "theta": l.label(t) }))
            .collect();
        st.serialize_field("correspondence", &pairs)?;
        st.serialize_field("fixed", &label_set(&self.fixed))?;
        st.serialize_field("round_trip_ok", &self.round_trip_ok)?;
        st.serialize_field("formal_empty_outside", &self.formal_empty_outside)?;
        st.serialize_field("failure", &self.failure)?;
        st.end()
    }
}

/// Point bijection `P_C ↦ P_f(C)` induced by a lattice isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedMap {
    pub pairs: Vec<(usize, usize)>,
    pub closed_sets_preserved: bool,
}

pub fn induced_homeomorphism(hom: &LatticeHom<'_>, kind: SpaceKind) -> Result<InducedMap> {
    if !hom.is_isomorphism() {
        return Err(Error::NotIso);
    }
    let source = build_space(hom.source(), kind);
    let target = build_space(hom.target(), kind);
    let pairs: Vec<(usize, usize)> = source.points.iter().map(|&p| (p, hom.apply(p))).collect();

    let mut image: Vec<usize> = pairs.iter().map(|&(_, q)| q).collect();
    image.sort_unstable();
    let mut preserved = image == target.points;
    if preserved {
        let mut mapped: Vec<Vec<usize>> = source
            .closed_sets()
            .map(|s| {
                let mut m: Vec<usize> = s.iter().map(|&p| hom.apply(p)).collect();
                m.sort_unstable();
                m
            })
            .collect();
        mapped.sort_by(|a, b| canonical(a, b));
        let expected: Vec<Vec<usize>> = target.closed_sets().map(<[usize]>::to_vec).collect();
        preserved = mapped == expected;
    }
    Ok(InducedMap { pairs, closed_sets_preserved: preserved })
}

/// The contravariant map on meet-prime spectra induced by a complete
/// homomorphism `f : Φ → Ψ`, sending a meet prime `C` of `Ψ` to the join of
/// `{D ∈ Φ : f(D) ≤ C}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointfreeMap {
    /// Meet primes of the target lattice, ascending.
    pub domain: Vec<usize>,
    pub image: Vec<usize>,
    /// Every image is meet prime in the source lattice.
    pub well_defined: bool,
    /// Pulling back the closed set of every source element `A` gives the
    /// closed set of `f(A)`.
    pub continuity_ok: bool,
    pub continuity_failure: Option<usize>,
}

impl PointfreeMap {
    pub fn apply(&self, c: usize) -> Option<usize> {
        self.domain.iter().position(|&d| d == c).map(|i| self.image[i])
    }
}

pub fn pointfree_map(hom: &LatticeHom<'_>) -> Result<PointfreeMap> {
    if hom.level() != HomLevel::Complete {
        return Err(Error::NotCompleteHom);
    }
    let (phi, psi) = (hom.source(), hom.target());
    let phi_classes = classify_all(phi);
    let domain: Vec<usize> =
        classify_all(psi).iter().filter(|c| c.meet_prime).map(|c| c.element).collect();
    let image: Vec<usize> = domain
        .iter()
        .map(|&c| phi.join_all(phi.elements().filter(|&d| psi.leq(hom.apply(d), c))))
        .collect();
    let well_defined = image.iter().all(|&e| phi_classes[e].meet_prime);

    let mut continuity_failure = None;
    for a in phi.elements() {
        let pulled: Vec<usize> =
            domain.iter().zip(&image).filter(|&(_, &e)| phi.leq(a, e)).map(|(&c, _)| c).collect();
        let direct: Vec<usize> = domain.iter().copied().filter(|&c| psi.leq(hom.apply(a), c)).collect();
        if pulled != direct {
            continuity_failure = Some(a);
            break;
        }
    }
    Ok(PointfreeMap {
        domain,
        image,
        well_defined,
        continuity_ok: continuity_failure.is_none(),
        continuity_failure,
    })
}

/// `K(id) = id` on the meet-prime spectrum.
pub fn pointfree_identity_holds(lattice: &FiniteLattice) -> bool {
    let id = LatticeHom::identity(lattice);
    match pointfree_map(&id) {
        Ok(m) => m.domain == m.image,
        Err(_) => false,
    }
}

/// `K(g ∘ f) = K(f) ∘ K(g)` pointwise, for `f : Φ → Ψ` and `g : Ψ → Ω`.
pub fn pointfree_composition_holds(f: &LatticeHom<'_>, g: &LatticeHom<'_>) -> Result<bool> {
    let gf = f.then(g)?;
    let (kf, kg, kgf) = (pointfree_map(f)?, pointfree_map(g)?, pointfree_map(&gf)?);
    Ok(kgf.domain == kg.domain
        && kg.domain.iter().zip(&kgf.image).all(|(&c, &direct)| {
            kg.apply(c).and_then(|mid| kf.apply(mid)) == Some(direct)
        }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::hom::check_hom;

    fn labels(l: &FiniteLattice, set: &[usize]) -> Vec<String> {
        set.iter().map(|&p| l.label(p).to_string()).collect()
    }

    #[test]
    fn a2_kgp_has_five_closed_sets() {
        let l = corpus::a2_nullity();
        let s = build_space(&l, SpaceKind::Kgp);
        assert_eq!(labels(&l, &s.points), ["⟨0⟩", "⟨a⟩", "⟨c⟩"]);
        let closed: Vec<Vec<String>> = s.closed_sets().map(|c| labels(&l, c)).collect();
        assert_eq!(
            closed,
            vec![
                vec![],
                vec!["⟨0⟩".to_string()],
                vec!["⟨0⟩".into(), "⟨a⟩".into()],
                vec!["⟨0⟩".into(), "⟨c⟩".into()],
                vec!["⟨0⟩".into(), "⟨a⟩".into(), "⟨c⟩".into()],
            ]
        );
        assert!(s.topology.ok && s.t0);
        let bc = l.element("⟨b,c⟩").unwrap();
        let c = l.element("⟨c⟩").unwrap();
        let shared = s.closed_family.iter().find(|m| m.generators.contains(&bc)).unwrap();
        assert_eq!(shared.generators, vec![c, bc]);
    }

    #[test]
    fn a2_k_is_not_a_topology() {
        let l = corpus::a2_nullity();
        let s = build_space(&l, SpaceKind::K);
        assert_eq!(s.points.len(), 4);
        assert!(!s.topology.ok);
        let v = s.topology.counterexample.unwrap();
        assert_eq!(v.operation, SetOperation::Union);
        assert_eq!(v.generators, (l.element("⟨a⟩").unwrap(), l.element("⟨c⟩").unwrap()));
        assert_eq!(labels(&l, &v.result), ["⟨0⟩", "⟨a⟩", "⟨c⟩"]);
        assert!(s.t0);
    }

    #[test]
    fn m3_has_no_gprimes() {
        let l = corpus::m3();
        let s = build_space(&l, SpaceKind::Kgp);
        assert!(s.points.is_empty());
        assert_eq!(s.closed_family.len(), 1);
    }

    #[test]
    fn powerset_meet_primes_include_top() {
        let l = corpus::powerset(2);
        let s = build_space(&l, SpaceKind::MeetPrime);
        let mut got = labels(&l, &s.points);
        got.sort();
        assert_eq!(got, ["{p1,p2}", "{p1}", "{p2}"]);
        assert!(s.topology.ok);
    }

    #[test]
    fn indiscrete_family_is_not_t0() {
        assert!(!separates_points(&[0, 1], [&[][..], &[0, 1][..]]));
        assert!(separates_points(&[0, 1], [&[][..], &[0][..], &[0, 1][..]]));
    }

    #[test]
    fn hat_examples() {
        let l = corpus::a2_nullity();
        let e = |s: &str| l.element(s).unwrap();
        assert_eq!(hat(&l, e("⟨b,c⟩"), JoinClass::GPrime).unwrap(), e("⟨c⟩"));
        assert_eq!(hat(&l, e("𝒜"), JoinClass::GPrime).unwrap(), e("𝒜"));
        assert_eq!(hat(&l, l.bottom(), JoinClass::GPrime).unwrap(), l.bottom());
        assert!(hat(&l, 99, JoinClass::GPrime).is_err());
    }

    #[test]
    fn a2_gprime_classification() {
        let l = corpus::a2_nullity();
        let r = verify_classification(&l, SpaceKind::Kgp);
        assert!(r.round_trip_ok, "{:?}", r.failure);
        assert_eq!(labels(&l, &r.fixed), ["∅", "⟨0⟩", "⟨a⟩", "⟨c⟩", "𝒜"]);
        assert_eq!(r.closed_sets.len(), 5);
        assert!(!r.formal_empty_outside);
    }

    #[test]
    fn one_element_classification() {
        let l = corpus::chain(1);
        let r = verify_classification(&l, SpaceKind::Kgp);
        assert_eq!(r.fixed, vec![0]);
        assert_eq!(r.closed_sets, vec![Vec::<usize>::new()]);
        assert!(r.round_trip_ok);
    }

    #[test]
    fn vacuous_bottom_leaves_formal_empty_outside() {
        let l = corpus::chain(3);
        let r = verify_classification(&l, SpaceKind::JoinPrime);
        assert!(r.round_trip_ok);
        assert!(r.formal_empty_outside);
        let s = build_space(&l, SpaceKind::JoinPrime);
        assert_eq!(s.closed_family.len(), r.closed_sets.len() + 1);
    }

    #[test]
    fn meet_kinds_via_dual() {
        let l = corpus::a2_nullity();
        let r = verify_classification(&l, SpaceKind::MeetPrime);
        assert!(r.round_trip_ok, "{:?}", r.failure);
        for (set, &t) in r.closed_sets.iter().zip(&r.theta) {
            assert_eq!(l.meet_all(set.iter().copied()), t);
        }
    }

    #[test]
    fn induced_homeomorphism_on_permuted_copy() {
        let l = corpus::a2_nullity();
        let id = check_hom(l.elements().collect(), &l, &l).unwrap();
        let m = induced_homeomorphism(&id, SpaceKind::K).unwrap();
        assert!(m.closed_sets_preserved);
        assert!(m.pairs.iter().all(|&(a, b)| a == b));
        assert_eq!(m.pairs.len(), 4);

        let perm = [3, 5, 0, 1, 4, 2];
        let copy = corpus::relabel_permuted(&l, &perm);
        let iso = crate::hom::find_isomorphism(&l, &copy).unwrap();
        let m = induced_homeomorphism(&iso, SpaceKind::Kgp).unwrap();
        assert!(m.closed_sets_preserved);

        let chain = corpus::chain(6);
        // indices are a linear extension, so this is a monotone bijection
        let not_iso = check_hom(vec![0, 1, 2, 3, 4, 5], &l, &chain).unwrap();
        assert!(not_iso.is_bijective() && !not_iso.is_isomorphism());
        assert!(matches!(induced_homeomorphism(&not_iso, SpaceKind::K), Err(Error::NotIso)));
        let collapse = check_hom(vec![0; 6], &l, &l).unwrap();
        assert!(matches!(induced_homeomorphism(&collapse, SpaceKind::K), Err(Error::NotIso)));
    }

    #[test]
    fn pointfree_identity_and_collapse() {
        let l = corpus::a2_nullity();
        assert!(pointfree_identity_holds(&l));

        let c3 = corpus::chain(3);
        let c2 = corpus::chain(2);
        let f = check_hom(vec![0, 1, 1], &c3, &c2).unwrap();
        let k = pointfree_map(&f).unwrap();
        // meet primes of 0<1 are both elements; ↓0 pulls back to {0}, ↓1 to all of c3
        assert_eq!(k.domain, vec![0, 1]);
        assert_eq!(k.image, vec![0, 2]);
        assert!(k.well_defined && k.continuity_ok);

        let lattice_only = check_hom(vec![0, 0, 0], &c3, &c3).unwrap();
        assert!(matches!(pointfree_map(&lattice_only), Err(Error::NotCompleteHom)));
    }
}

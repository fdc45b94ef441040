//! Theorem suites run over a single lattice, space or hom, and the corpus
//! expectation runner. Every check is exhaustive over the structure it is
//! given.

use std::fmt::Write as _;

use serde::Serialize;

use crate::catlab::{monoform_representatives, CategoryTable, SubcategoryKind};
use crate::corpus::{entry_lattice, CorpusEntry, EntryKind};
use crate::error::Result;
use crate::hom::{HomLevel, LatticeHom};
use crate::lattice::FiniteLattice;
use crate::space::{
    build_space, hat, induced_homeomorphism, pointfree_composition_holds, pointfree_identity_holds, pointfree_map,
    verify_classification, JoinClass, SpaceKind,
};
use crate::spectra::{classify_all, oracle_completely, CompleteClass};
use crate::topology::{kq_vs_K_check, load_space, t0_quotient, FiniteSpace, SpaceDoc};

/// Lattices up to this size are also checked against the subset oracle.
pub const ORACLE_SUITE_LIMIT: usize = 12;
/// Associativity is cubic; skipped above this size.
const ASSOCIATIVITY_LIMIT: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A failure the theory predicts, asserted together with its witness.
    ExpectedNegative,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::ExpectedNegative => "expected-negative",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CheckLine {
    fn new(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Pass } else { Status::Fail };
        CheckLine { name: name.into(), status, detail: detail.into() }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub subject: String,
    pub ok: bool,
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn new(subject: impl Into<String>) -> Self {
        CheckReport { subject: subject.into(), ok: true, lines: Vec::new() }
    }

    pub fn push(&mut self, line: CheckLine) {
        self.ok &= line.status != Status::Fail;
        self.lines.push(line);
    }

    pub fn extend(&mut self, lines: impl IntoIterator<Item = CheckLine>) {
        for line in lines {
            self.push(line);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| l.status == Status::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.subject);
        for line in &self.lines {
            let _ = writeln!(out, "  [{}] {}: {}", line.status.tag(), line.name, line.detail);
        }
        let _ = writeln!(out, "{}", if self.ok { "ok" } else { "FAILED" });
        out
    }
}

fn label_list(l: &FiniteLattice, set: &[usize]) -> String {
    let names: Vec<&str> = set.iter().map(|&c| l.label(c)).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn lattice_laws(l: &FiniteLattice) -> CheckLine {
    let n = l.len();
    let mut failure = None;
    'outer: for a in 0..n {
        for b in 0..n {
            let (j, m) = (l.join(a, b), l.meet(a, b));
            let order = l.leq(a, b) == (j == b) && l.leq(a, b) == (m == a);
            let comm = j == l.join(b, a) && m == l.meet(b, a);
            let absorb = l.join(a, m) == a && l.meet(a, j) == a;
            if !(order && comm && absorb) {
                failure = Some(format!("fails at ({}, {})", l.label(a), l.label(b)));
                break 'outer;
            }
            if n <= ASSOCIATIVITY_LIMIT {
                for c in 0..n {
                    if l.join(j, c) != l.join(a, l.join(b, c)) || l.meet(m, c) != l.meet(a, l.meet(b, c)) {
                        failure = Some(format!("associativity fails at ({}, {}, {})", l.label(a), l.label(b), l.label(c)));
                        break 'outer;
                    }
                }
            }
        }
    }
    let detail = failure.clone().unwrap_or_else(|| format!("{n} elements"));
    CheckLine::new("lattice laws", failure.is_none(), detail)
}

/// The verdict agrees with itself: a distributive lattice has no forbidden
/// sublattice, and a failing triple comes with a genuine pentagon or diamond.
pub fn distributivity(l: &FiniteLattice) -> CheckLine {
    let v = l.is_distributive();
    if v.distributive {
        let clean = l.find_forbidden_sublattice().is_none();
        return CheckLine::new("distributivity", clean, if clean { "distributive" } else { "forbidden sublattice in a distributive lattice" });
    }
    let witness_ok = v.witness.is_some_and(|[a, b, c]| l.join(a, l.meet(b, c)) != l.meet(l.join(a, b), l.join(a, c)));
    let Some(f) = v.forbidden else {
        return CheckLine::new("distributivity", false, "not distributive but no N5 or M3 found");
    };
    let [bot, x, y, z, top] = f.elements;
    let shape_ok = match f.shape {
        crate::lattice::ForbiddenShape::Pentagon => {
            // bottom, low < high, side
            l.lt(x, y)
                && l.join(x, z) == top
                && l.join(y, z) == top
                && l.meet(x, z) == bot
                && l.meet(y, z) == bot
        }
        crate::lattice::ForbiddenShape::Diamond => [(x, y), (x, z), (y, z)]
            .iter()
            .all(|&(p, q)| l.join(p, q) == top && l.meet(p, q) == bot && !l.comparable(p, q)),
    };
    let shape = match f.shape {
        crate::lattice::ForbiddenShape::Pentagon => "N5",
        crate::lattice::ForbiddenShape::Diamond => "M3",
    };
    CheckLine::new(
        "distributivity",
        witness_ok && shape_ok,
        format!("not distributive, {shape} on {}", label_list(l, &f.elements)),
    )
}

/// Prime implies irreducible on both sides; when distributive, the converse.
pub fn prime_irreducible(l: &FiniteLattice) -> CheckLine {
    let classes = classify_all(l);
    let distributive = l.is_distributive().distributive;
    for c in &classes {
        if (c.join_prime && !c.join_irreducible) || (c.meet_prime && !c.meet_irreducible) {
            return CheckLine::new("prime implies irreducible", false, format!("fails at {}", l.label(c.element)));
        }
        if distributive && (c.join_prime != c.join_irreducible || c.meet_prime != c.meet_irreducible) {
            return CheckLine::new("prime implies irreducible", false, format!("converse fails at {} in a distributive lattice", l.label(c.element)));
        }
    }
    let detail = if distributive { "both directions (distributive)" } else { "one direction" };
    CheckLine::new("prime implies irreducible", true, detail)
}

/// Points are exactly the completely join-irreducible elements, and the
/// g-primes are the join-prime points.
pub fn point_characterisation(l: &FiniteLattice) -> CheckLine {
    let classes = classify_all(l);
    for c in &classes {
        if c.is_point != c.completely_join_irreducible {
            return CheckLine::new("points", false, format!("point and completely join-irreducible disagree at {}", l.label(c.element)));
        }
        if c.completely_join_prime != (c.join_prime && c.is_point) {
            return CheckLine::new("points", false, format!("g-prime is not join-prime point at {}", l.label(c.element)));
        }
    }
    let n = classes.iter().filter(|c| c.is_point).count();
    CheckLine::new("points", true, format!("{n} points"))
}

/// Fast-path "completely" flags against the subset-enumeration oracle.
pub fn oracle_equivalence(l: &FiniteLattice) -> Option<CheckLine> {
    if l.len() > ORACLE_SUITE_LIMIT {
        return None;
    }
    let classes = classify_all(l);
    for c in &classes {
        for class in CompleteClass::ALL {
            let oracle = oracle_completely(l, c.element, class).expect("within cap");
            if oracle != class.flag(c) {
                return Some(CheckLine::new("oracle", false, format!("{class:?} disagrees at {}", l.label(c.element))));
            }
        }
    }
    Some(CheckLine::new("oracle", true, format!("{} elements x 4 classes", l.len())))
}

pub fn topology(l: &FiniteLattice, kind: SpaceKind) -> CheckLine {
    let s = build_space(l, kind);
    let name = format!("topology {kind}");
    let sets = s.closed_family.len();
    if s.topology.ok {
        return CheckLine::new(name, true, format!("{} points, {sets} closed subsets", s.points.len()));
    }
    let distributive = l.is_distributive().distributive;
    let Some(v) = &s.topology.counterexample else {
        return CheckLine::new(name, false, "not a topology, no counterexample");
    };
    let (g, h) = v.generators;
    let what = format!(
        "{:?} of the sets of {} and {} gives {}",
        v.operation,
        l.label(g),
        l.label(h),
        label_list(l, &v.result)
    )
    .to_lowercase();
    if distributive || kind.always_topological() {
        CheckLine::new(name, false, format!("not a topology: {what}"))
    } else {
        let family = if kind == SpaceKind::K { "K family".to_string() } else { format!("{kind} family") };
        CheckLine {
            name,
            status: Status::ExpectedNegative,
            detail: format!("{family} not a topology (counterexample attached): {what}"),
        }
    }
}

pub fn t0(l: &FiniteLattice) -> CheckLine {
    let bad: Vec<&str> = SpaceKind::ALL.iter().filter(|&&k| !build_space(l, k).t0).map(|k| k.name()).collect();
    let detail = if bad.is_empty() { "all kinds separate points".to_string() } else { format!("not T0: {}", bad.join(", ")) };
    CheckLine::new("t0", bad.is_empty(), detail)
}

pub fn bijection(l: &FiniteLattice, kind: SpaceKind) -> CheckLine {
    let r = verify_classification(l, kind);
    let name = format!("bijection {kind}");
    match &r.failure {
        Some(f) => CheckLine::new(name, false, f.clone()),
        None => {
            let mut detail = format!("{} fixed elements", r.fixed.len());
            if r.formal_empty_outside {
                detail.push_str(", formal empty set outside the generated family");
            }
            CheckLine::new(name, true, detail)
        }
    }
}

/// The hat closures are deflationary, idempotent and monotone, and the
/// closed set of `hat(C)` is that of `C`.
pub fn hat_laws(l: &FiniteLattice) -> CheckLine {
    let classes = classify_all(l);
    for class in JoinClass::ALL {
        let kind = class.kind();
        let below = |c: usize| -> Vec<usize> {
            classes.iter().filter(|k| kind.admits(k) && l.leq(k.element, c)).map(|k| k.element).collect()
        };
        let h: Vec<usize> = l.elements().map(|c| hat(l, c, class).expect("in range")).collect();
        for c in l.elements() {
            let ok = l.leq(h[c], c) && h[h[c]] == h[c] && below(h[c]) == below(c);
            let mono = l.elements().all(|d| !l.leq(c, d) || l.leq(h[c], h[d]));
            if !ok || !mono {
                return CheckLine::new("hat", false, format!("{class:?} fails at {}", l.label(c)));
            }
        }
    }
    CheckLine::new("hat", true, "four closures")
}

/// Classifying the dual lattice swaps join and meet flags.
pub fn dual_swap(l: &FiniteLattice) -> CheckLine {
    let dual = l.dualize();
    let (here, there) = (classify_all(l), classify_all(&dual));
    for (a, b) in here.iter().zip(&there) {
        let mut s = a.swapped();
        s.c_circle = b.c_circle;
        s.is_point = b.is_point;
        if s != *b {
            return CheckLine::new("dual", false, format!("flags do not swap at {}", l.label(a.element)));
        }
    }
    CheckLine::new("dual", true, "flags swap")
}

pub fn pointfree_identity(l: &FiniteLattice) -> CheckLine {
    let ok = pointfree_identity_holds(l);
    CheckLine::new("pointfree identity", ok, if ok { "identity law" } else { "identity law fails" })
}

/// The full lattice suite behind `check --all`.
pub fn lattice_suite(l: &FiniteLattice) -> CheckReport {
    let mut r = CheckReport::new(format!("lattice {} ({} elements)", l.name(), l.len()));
    r.push(lattice_laws(l));
    r.push(distributivity(l));
    r.push(prime_irreducible(l));
    r.push(point_characterisation(l));
    if let Some(line) = oracle_equivalence(l) {
        r.push(line);
    }
    for kind in SpaceKind::ALL {
        r.push(topology(l, kind));
    }
    r.push(t0(l));
    for kind in SpaceKind::ALL {
        r.push(bijection(l, kind));
    }
    r.push(hat_laws(l));
    r.push(dual_swap(l));
    r.push(pointfree_identity(l));
    r
}

/// Quotient checks for a space, then the lattice suite on its closed sets.
pub fn space_suite(x: &FiniteSpace) -> CheckReport {
    let mut r = CheckReport::new(format!("space {} ({} points)", x.name(), x.len()));
    r.extend(space_lines(x));
    let lattice = x.closed_set_lattice();
    r.extend(lattice_suite(&lattice).lines);
    r
}

pub fn space_lines(x: &FiniteSpace) -> Vec<CheckLine> {
    let v = kq_vs_K_check(x);
    let q = t0_quotient(x);
    let qq = t0_quotient(&q.quotient);
    let idempotent = qq.classes.iter().all(|c| c.len() == 1) && qq.quotient.closed_sets() == q.quotient.closed_sets();
    let distributive = x.closed_set_lattice().is_distributive().distributive;
    vec![
        CheckLine::new(
            "kq vs K",
            v.ok,
            v.failure.unwrap_or_else(|| format!("{} classes onto {} points", q.classes.len(), v.bijection.len())),
        ),
        CheckLine::new("quotient idempotent", idempotent, format!("{} points, t0 {}", q.quotient.len(), q.quotient.is_t0())),
        CheckLine::new("closed sets distributive", distributive, format!("{} closed sets", x.closed_sets().len())),
    ]
}

/// Representatives of the points of a subcategory lattice by monoform objects.
pub fn monoform_lines(table: &CategoryTable, kind: SubcategoryKind) -> Result<Vec<CheckLine>> {
    let reps = monoform_representatives(table, kind)?;
    let lattice = crate::catlab::enumerate_subcategory_lattice(table, kind)?;
    let missing: Vec<&str> = reps.iter().filter(|(_, r)| r.is_none()).map(|&(c, _)| lattice.label(c)).collect();
    let top_is_point = reps.iter().any(|&(c, _)| c == lattice.top());
    let detail = if missing.is_empty() {
        let pairs: Vec<String> =
            reps.iter().map(|&(c, o)| format!("{} by {}", lattice.label(c), table.objects[o.unwrap()])).collect();
        pairs.join(", ")
    } else {
        format!("no monoform generator for {}", missing.join(", "))
    };
    Ok(vec![
        CheckLine::new("monoform points", missing.is_empty(), detail),
        CheckLine::new("top not a point", !top_is_point || lattice.len() == 1, lattice.label(lattice.top()).to_string()),
    ])
}

/// Functor checks for a hom: its level, the pointfree map and, for an
/// endomorphism, composition with itself; for an isomorphism, the induced
/// homeomorphisms.
pub fn hom_suite(f: &LatticeHom<'_>) -> CheckReport {
    let mut r = CheckReport::new(format!("hom {} -> {}", f.source().name(), f.target().name()));
    let level = f.level();
    let detail = match f.violation() {
        Some(v) => format!("{level:?}; next level fails: {v:?}"),
        None => format!("{level:?}"),
    };
    r.push(CheckLine::new("level", true, detail.to_lowercase()));
    if level < HomLevel::Complete {
        return r;
    }
    let map = pointfree_map(f).expect("complete");
    r.push(CheckLine::new(
        "pointfree well-defined",
        map.well_defined,
        format!("{} meet-primes of the target", map.domain.len()),
    ));
    let continuity = match map.continuity_failure {
        Some(a) => format!("fails at {}", f.source().label(a)),
        None => format!("all {} elements", f.source().len()),
    };
    r.push(CheckLine::new("continuity", map.continuity_ok, continuity));
    let (src_id, tgt_id) = (LatticeHom::identity(f.source()), LatticeHom::identity(f.target()));
    let left = pointfree_composition_holds(&src_id, f).unwrap_or(false);
    let right = pointfree_composition_holds(f, &tgt_id).unwrap_or(false);
    r.push(CheckLine::new("identity law", left && right && pointfree_identity_holds(f.source()), "both sides"));
    if std::ptr::eq(f.source(), f.target()) || f.source() == f.target() {
        match pointfree_composition_holds(f, f) {
            Ok(ok) => r.push(CheckLine::new("composition", ok, "f then f")),
            Err(e) => r.push(CheckLine::new("composition", false, e.to_string())),
        }
    }
    if f.is_isomorphism() {
        for kind in SpaceKind::ALL {
            let m = induced_homeomorphism(f, kind).expect("isomorphism");
            r.push(CheckLine::new(format!("homeomorphism {kind}"), m.closed_sets_preserved, format!("{} points", m.pairs.len())));
        }
    }
    r
}

fn count_line(name: String, expected: usize, got: usize) -> CheckLine {
    CheckLine::new(name, expected == got, format!("expected {expected}, got {got}"))
}

/// Compares an entry's analysis output with its expectations.
pub fn expectation_lines(entry: &CorpusEntry) -> Result<Vec<CheckLine>> {
    let lattice = entry_lattice(entry)?;
    let Some(e) = &entry.expected else { return Ok(Vec::new()) };
    let mut lines = Vec::new();
    if let Some(n) = e.elements {
        lines.push(count_line("elements".into(), n, lattice.len()));
    }
    let verdict = lattice.is_distributive();
    if let Some(d) = e.distributive {
        lines.push(CheckLine::new("distributive", d == verdict.distributive, format!("expected {d}, got {}", verdict.distributive)));
    }
    if let Some(shape) = e.forbidden {
        let got = verdict.forbidden.map(|f| f.shape);
        lines.push(CheckLine::new("forbidden", got == Some(shape), format!("expected {shape:?}, got {got:?}").to_lowercase()));
    }
    for (kind, &n) in &e.points {
        let k: SpaceKind = kind.parse()?;
        lines.push(count_line(format!("points {k}"), n, build_space(&lattice, k).points.len()));
    }
    for (kind, &n) in &e.closed_sets {
        let k: SpaceKind = kind.parse()?;
        lines.push(count_line(format!("closed sets {k}"), n, build_space(&lattice, k).closed_family.len()));
    }
    for (kind, &want) in &e.topology {
        let k: SpaceKind = kind.parse()?;
        let s = build_space(&lattice, k);
        let name = format!("topology {k}");
        lines.push(if want || s.topology.ok {
            CheckLine::new(name, want == s.topology.ok, format!("expected {want}, got {}", s.topology.ok))
        } else if s.topology.counterexample.is_some() {
            CheckLine { name, status: Status::ExpectedNegative, detail: "not a topology (counterexample attached)".into() }
        } else {
            CheckLine::new(name, false, "not a topology, counterexample missing")
        });
    }
    for (kind, &n) in &e.fixed {
        let k: SpaceKind = kind.parse()?;
        let r = verify_classification(&lattice, k);
        lines.push(count_line(format!("fixed {k}"), n, r.fixed.len()));
        lines.push(CheckLine::new(format!("round trip {k}"), r.round_trip_ok, r.failure.unwrap_or_default()));
    }
    if entry.kind == EntryKind::Space {
        let doc: SpaceDoc = serde_json::from_str(entry.document())?;
        let x = load_space(&doc)?;
        if let Some(t) = e.t0 {
            lines.push(CheckLine::new("t0", t == x.is_t0(), format!("expected {t}, got {}", x.is_t0())));
        }
        if let Some(n) = e.quotient_points {
            lines.push(count_line("quotient points".into(), n, t0_quotient(&x).quotient.len()));
        }
        if let Some(ok) = e.kq_ok {
            let got = kq_vs_K_check(&x).ok;
            lines.push(CheckLine::new("kq vs K", ok == got, format!("expected {ok}, got {got}")));
        }
    }
    Ok(lines)
}

/// Expectations first, then the full suite for the entry's structure.
pub fn run_entry(entry: &CorpusEntry) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("corpus {}", entry.name));
    r.extend(expectation_lines(entry)?);
    match entry.kind {
        EntryKind::Space => {
            let doc: SpaceDoc = serde_json::from_str(entry.document())?;
            r.extend(space_suite(&load_space(&doc)?).lines);
        }
        _ => r.extend(lattice_suite(&entry_lattice(entry)?).lines),
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn a2_suite_passes_with_expected_negative() {
        let r = lattice_suite(&corpus::a2_nullity());
        assert!(r.ok, "{}", r.to_text());
        let k = r.lines.iter().find(|l| l.name == "topology k").unwrap();
        assert_eq!(k.status, Status::ExpectedNegative);
        assert!(k.detail.starts_with("K family not a topology (counterexample attached)"));
        let kgp = r.lines.iter().find(|l| l.name == "topology kgp").unwrap();
        assert!(kgp.detail.contains("5 closed subsets"));
    }

    #[test]
    fn corpus_expectations_hold() {
        for e in corpus::entries() {
            let r = run_entry(&e).unwrap();
            assert!(r.ok, "{}", r.to_text());
        }
    }

    #[test]
    fn serre_points_have_monoform_generators() {
        let lines = monoform_lines(&corpus::a2_table(), SubcategoryKind::Serre).unwrap();
        assert!(lines.iter().all(|l| l.status == Status::Pass), "{lines:?}");
    }
}

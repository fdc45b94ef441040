//! Finite topological spaces stored by their closed sets.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{dot_quote, FiniteLattice};
use crate::space::{build_space, SpaceKind};

/// Space document: `{ "points": [string], "closed_sets": [[index]] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDoc {
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub name: String,
    pub points: Vec<String>,
    pub closed_sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    name: String,
    points: Vec<String>,
    /// Each set sorted ascending; family kept in document order.
    closed_sets: Vec<Vec<usize>>,
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let s: BTreeSet<usize> = a.iter().chain(b).copied().collect();
    s.into_iter().collect()
}

fn intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

pub fn load_space(doc: &SpaceDoc) -> Result<FiniteSpace> {
    FiniteSpace::new(doc.name.clone(), doc.points.clone(), doc.closed_sets.clone())
}

impl FiniteSpace {
    /// Validates the family. Nothing is repaired: a missing empty or full
    /// set, a repeated member or a failed closure is an error.
    pub fn new(name: String, points: Vec<String>, closed_sets: Vec<Vec<usize>>) -> Result<Self> {
        let n = points.len();
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::DuplicateLabel(p.clone()));
            }
        }
        let mut family = Vec::with_capacity(closed_sets.len());
        let mut members = BTreeSet::new();
        for set in closed_sets {
            let mut set = set;
            set.sort_unstable();
            set.dedup();
            if let Some(&bad) = set.iter().find(|&&p| p >= n) {
                return Err(Error::UnknownPoint(bad.to_string()));
            }
            if !members.insert(set.clone()) {
                return Err(Error::DuplicateClosedSet(set));
            }
            family.push(set);
        }
        if !members.contains(&Vec::new()) {
            return Err(Error::MissingEmpty);
        }
        if !members.contains(&(0..n).collect::<Vec<_>>()) {
            return Err(Error::MissingFull);
        }
        for (i, a) in family.iter().enumerate() {
            for b in &family[i + 1..] {
                if !members.contains(&union(a, b)) {
                    return Err(Error::NotClosedUnderUnion(a.clone(), b.clone()));
                }
                if !members.contains(&intersection(a, b)) {
                    return Err(Error::NotClosedUnderIntersection(a.clone(), b.clone()));
                }
            }
        }
        Ok(FiniteSpace { name, points, closed_sets: family })
    }

    /// The topology whose closed sets are the down-sets of a preorder given
    /// as `below(x, y)` meaning `x ≤ y`. Every finite topology arises this way.
    pub fn from_preorder<F>(name: impl Into<String>, points: Vec<String>, below: F) -> Self
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = points.len();
        assert!(n <= 20, "down-set enumeration is exponential");
        let mut family = Vec::new();
        for mask in 0u32..(1 << n) {
            let inside = |x: usize| mask >> x & 1 == 1;
            let closed = (0..n).all(|y| !inside(y) || (0..n).all(|x| !below(x, y) || inside(x)));
            if closed {
                family.push((0..n).filter(|&x| inside(x)).collect::<Vec<_>>());
            }
        }
        family.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        FiniteSpace { name: name.into(), points, closed_sets: family }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn closed_sets(&self) -> &[Vec<usize>] {
        &self.closed_sets
    }

    pub fn is_closed(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.closed_sets.contains(&s)
    }

    pub fn to_doc(&self) -> SpaceDoc {
        SpaceDoc { name: self.name.clone(), points: self.points.clone(), closed_sets: self.closed_sets.clone() }
    }

    /// Smallest closed set containing `x`.
    pub fn closure_of_point(&self, x: usize) -> Result<Vec<usize>> {
        if x >= self.len() {
            return Err(Error::UnknownPoint(x.to_string()));
        }
        let all: Vec<usize> = (0..self.len()).collect();
        Ok(self
            .closed_sets
            .iter()
            .filter(|s| s.binary_search(&x).is_ok())
            .fold(all, |acc, s| intersection(&acc, s)))
    }

    fn closures(&self) -> Vec<Vec<usize>> {
        (0..self.len()).map(|x| self.closure_of_point(x).expect("in range")).collect()
    }

    pub fn is_t0(&self) -> bool {
        let c = self.closures();
        let unique: BTreeSet<&Vec<usize>> = c.iter().collect();
        unique.len() == c.len()
    }

    /// Closed sets ordered by inclusion; meet is intersection and join is
    /// union (a finite union of closed sets is closed).
    pub fn closed_set_lattice(&self) -> FiniteLattice {
        let labels: Vec<String> = self.closed_sets.iter().map(|s| self.set_label(s)).collect();
        let sets = &self.closed_sets;
        let name = if self.name.is_empty() { "closed sets".to_string() } else { format!("closed sets of {}", self.name) };
        FiniteLattice::from_leq(name, labels, |a, b| is_subset(&sets[a], &sets[b]))
            .expect("a validated closed family is a lattice under inclusion")
    }

    /// Index of `set` in [`closed_sets`](Self::closed_sets), which is also
    /// its element index in [`closed_set_lattice`](Self::closed_set_lattice).
    pub fn closed_index(&self, set: &[usize]) -> Option<usize> {
        self.closed_sets.iter().position(|s| s == set)
    }

    pub fn set_label(&self, set: &[usize]) -> String {
        let names: Vec<&str> = set.iter().map(|&p| self.points[p].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Specialization order as a Hasse diagram: `x -> y` when `x` lies in
    /// the closure of `y` and nothing sits strictly between.
    pub fn to_dot(&self) -> String {
        let cl = self.closures();
        let below = |x: usize, y: usize| cl[y].binary_search(&x).is_ok();
        let strictly = |x: usize, y: usize| below(x, y) && !below(y, x);
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_quote(&self.name));
        let _ = writeln!(out, "  rankdir=BT;");
        for (i, p) in self.points.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label={}];", dot_quote(p));
        }
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if x < y && below(x, y) && below(y, x) {
                    let _ = writeln!(out, "  n{x} -> n{y} [dir=none, style=dashed];");
                } else if strictly(x, y) && !(0..n).any(|z| strictly(x, z) && strictly(z, y)) {
                    let _ = writeln!(out, "  n{x} -> n{y};");
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KolmogorovQuotient {
    pub source: FiniteSpace,
    /// Classes of points with equal closures, ordered by least member.
    pub classes: Vec<Vec<usize>>,
    pub quotient: FiniteSpace,
    pub projection: Vec<usize>,
}

pub fn t0_quotient(space: &FiniteSpace) -> KolmogorovQuotient {
    let closures = space.closures();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut projection = vec![0; space.len()];
    for x in 0..space.len() {
        match classes.iter().position(|c| closures[c[0]] == closures[x]) {
            Some(i) => {
                classes[i].push(x);
                projection[x] = i;
            }
            None => {
                projection[x] = classes.len();
                classes.push(vec![x]);
            }
        }
    }
    let labels: Vec<String> = classes
        .iter()
        .map(|c| {
            if c.len() == 1 {
                space.points[c[0]].clone()
            } else {
                let names: Vec<&str> = c.iter().map(|&p| space.points[p].as_str()).collect();
                format!("[{}]", names.join(","))
            }
        })
        .collect();
    let family = space
        .closed_sets
        .iter()
        .map(|s| {
            let img: BTreeSet<usize> = s.iter().map(|&p| projection[p]).collect();
            img.into_iter().collect()
        })
        .collect();
    let quotient = FiniteSpace::new(format!("KQ({})", space.name), labels, family)
        .expect("images of a topology under the Kolmogorov projection form a topology");
    KolmogorovQuotient { source: space.clone(), classes, quotient, projection }
}

/// Result of comparing the T0-quotient of `X` with the space `K` built on
/// its closed-set lattice through `[x] ↦ P_closure(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KqVerdict {
    pub ok: bool,
    /// Every point closure is a point of the lattice.
    pub hypothesis_holds: bool,
    /// `(class index, lattice element)` pairs.
    pub bijection: Vec<(usize, usize)>,
    pub failure: Option<String>,
}

#[allow(non_snake_case)]
pub fn kq_vs_K_check(space: &FiniteSpace) -> KqVerdict {
    let lattice = space.closed_set_lattice();
    let k = build_space(&lattice, SpaceKind::K);
    let kq = t0_quotient(space);

    let mut failure = None;
    let mut hypothesis_holds = true;
    let mut bijection = Vec::with_capacity(kq.classes.len());
    for (i, class) in kq.classes.iter().enumerate() {
        let closure = space.closure_of_point(class[0]).expect("in range");
        let element = space.closed_index(&closure).expect("closures are closed");
        if k.points.binary_search(&element).is_err() {
            hypothesis_holds = false;
            failure.get_or_insert_with(|| format!("closure of {} is not a point", space.points[class[0]]));
        }
        bijection.push((i, element));
    }

    let mut image: Vec<usize> = bijection.iter().map(|&(_, e)| e).collect();
    image.sort_unstable();
    let before = image.len();
    image.dedup();
    if image.len() != before {
        failure.get_or_insert_with(|| "map is not injective".into());
    }
    if image != k.points {
        failure.get_or_insert_with(|| "map is not onto the points of K".into());
    }

    // the quotient's closed sets are images of closed sets C, each of which
    // must land on K(C), and K(C) must pull back to exactly C
    let phi = |class: usize| bijection[class].1;
    for (c, set) in space.closed_sets.iter().enumerate() {
        let mut mapped: Vec<usize> = set.iter().map(|&x| phi(kq.projection[x])).collect();
        mapped.sort_unstable();
        mapped.dedup();
        let expected: Vec<usize> = k.points.iter().copied().filter(|&p| lattice.leq(p, c)).collect();
        if mapped != expected {
            failure.get_or_insert_with(|| format!("image of closed set {} is not K of it", space.set_label(set)));
        }
        let pulled: Vec<usize> = (0..space.len()).filter(|&x| expected.contains(&phi(kq.projection[x]))).collect();
        if pulled != *set {
            failure.get_or_insert_with(|| format!("K({}) does not pull back to itself", space.set_label(set)));
        }
    }
    KqVerdict { ok: failure.is_none(), hypothesis_holds, bijection, failure }
}

/// Backtracking search for a bijection carrying closed sets onto closed sets.
pub fn homeomorphic(first: &FiniteSpace, second: &FiniteSpace) -> Option<Vec<usize>> {
    let n = first.len();
    if n != second.len() || first.closed_sets.len() != second.closed_sets.len() {
        return None;
    }
    let c1 = first.closures();
    let c2 = second.closures();
    let below1 = |x: usize, y: usize| c1[y].binary_search(&x).is_ok();
    let below2 = |x: usize, y: usize| c2[y].binary_search(&x).is_ok();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn go(
        x: usize,
        n: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        fits: &dyn Fn(&[usize], usize, usize) -> bool,
    ) -> bool {
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || !fits(map, x, y) {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if go(x + 1, n, map, used, fits) {
                return true;
            }
            used[y] = false;
        }
        false
    }

    let fits = |map: &[usize], x: usize, y: usize| {
        c1[x].len() == c2[y].len()
            && (0..x).all(|u| below1(u, x) == below2(map[u], y) && below1(x, u) == below2(y, map[u]))
    };
    if !go(0, n, &mut map, &mut used, &fits) {
        return None;
    }
    let carried = first.closed_sets.iter().all(|s| {
        let mut img: Vec<usize> = s.iter().map(|&x| map[x]).collect();
        img.sort_unstable();
        second.closed_sets.contains(&img)
    });
    carried.then_some(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn space(points: &[&str], sets: &[&[usize]]) -> Result<FiniteSpace> {
        FiniteSpace::new(
            "t".into(),
            points.iter().map(|s| s.to_string()).collect(),
            sets.iter().map(|s| s.to_vec()).collect(),
        )
    }

    #[test]
    fn validation() {
        assert!(space(&["x", "y"], &[&[], &[0], &[0, 1]]).is_ok());
        assert!(matches!(
            space(&["x", "y", "z"], &[&[], &[0], &[1], &[0, 1, 2]]),
            Err(Error::NotClosedUnderUnion(..))
        ));
        assert!(matches!(
            space(&["x", "y", "z"], &[&[], &[0, 1], &[1, 2], &[0, 1, 2]]),
            Err(Error::NotClosedUnderIntersection(..))
        ));
        assert!(matches!(space(&["x"], &[&[0]]), Err(Error::MissingEmpty)));
        assert!(matches!(space(&["x", "y"], &[&[], &[0]]), Err(Error::MissingFull)));
        assert!(matches!(space(&["x"], &[&[], &[3], &[0]]), Err(Error::UnknownPoint(_))));
        assert!(matches!(space(&["x"], &[&[], &[0], &[0]]), Err(Error::DuplicateClosedSet(_))));
        assert!(corpus::discrete_space(3).closed_sets().len() == 8);
    }

    #[test]
    fn closed_set_lattices() {
        let s = corpus::sierpinski();
        let l = s.closed_set_lattice();
        assert!(crate::hom::find_isomorphism(&l, &corpus::chain(3)).is_some());
        let d = corpus::discrete_space(2).closed_set_lattice();
        assert!(crate::hom::find_isomorphism(&d, &corpus::powerset(2)).is_some());
        let x = space(&["x", "y", "z"], &[&[], &[0], &[0, 1], &[0, 2], &[0, 1, 2]]).unwrap();
        assert!(x.closed_set_lattice().is_distributive().distributive);
    }

    #[test]
    fn closures() {
        let s = corpus::sierpinski();
        assert_eq!(s.closure_of_point(1).unwrap(), vec![0, 1]);
        assert_eq!(corpus::discrete_space(3).closure_of_point(2).unwrap(), vec![2]);
        let chain = space(&["a", "b", "c"], &[&[], &[0], &[0, 1], &[0, 1, 2]]).unwrap();
        assert_eq!(chain.closure_of_point(2).unwrap(), vec![0, 1, 2]);
        assert!(s.closure_of_point(5).is_err());
    }

    #[test]
    fn quotients() {
        let q = t0_quotient(&corpus::indiscrete_space(2));
        assert_eq!(q.classes, vec![vec![0, 1]]);
        assert_eq!(q.quotient.len(), 1);

        let s = corpus::sierpinski();
        assert_eq!(t0_quotient(&s).classes, vec![vec![0], vec![1]]);

        let x = space(&["a", "b", "c"], &[&[], &[0, 1], &[0, 1, 2]]).unwrap();
        let q = t0_quotient(&x);
        assert_eq!(q.classes, vec![vec![0, 1], vec![2]]);
        assert!(homeomorphic(&q.quotient, &s).is_some());
        assert!(q.quotient.is_t0());
    }

    #[test]
    fn kq_matches_k() {
        let v = kq_vs_K_check(&corpus::sierpinski());
        assert!(v.ok && v.hypothesis_holds);
        assert_eq!(v.bijection.len(), 2);
        let v = kq_vs_K_check(&corpus::indiscrete_space(4));
        assert!(v.ok);
        assert_eq!(v.bijection.len(), 1);
    }

    #[test]
    fn homeomorphism_search() {
        let s = corpus::sierpinski();
        let relabeled = space(&["q", "p"], &[&[], &[1], &[0, 1]]).unwrap();
        assert_eq!(homeomorphic(&s, &relabeled), Some(vec![1, 0]));
        assert!(homeomorphic(&s, &corpus::discrete_space(2)).is_none());
        assert!(homeomorphic(&corpus::discrete_space(3), &corpus::discrete_space(3)).is_some());
    }

    #[test]
    fn dot_export() {
        let dot = corpus::sierpinski().to_dot();
        assert!(dot.contains("n0 -> n1;"));
    }
}

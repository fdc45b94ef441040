//! Seeded generators for lattices, posets and spaces.
//!
//! All generators draw from a caller-supplied RNG; [`rng`] gives the
//! reproducible ChaCha8 stream the suites use.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::FiniteLattice;
use crate::topology::FiniteSpace;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn set_label(set: &[usize]) -> String {
    let parts: Vec<String> = set.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn bits_to_vec(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

/// A Moore family on a ground set of 2 to 5 elements: random subsets closed
/// under intersection, plus the full set, ordered by inclusion. Redrawn until
/// it has at most `max_elements` members.
pub fn random_lattice<R: Rng>(rng: &mut R, max_elements: usize) -> FiniteLattice {
    assert!(max_elements >= 1);
    loop {
        let ground = rng.gen_range(2..=5u32);
        let full = (1u32 << ground) - 1;
        let mut family = vec![full];
        for _ in 0..rng.gen_range(1..=5) {
            let s = rng.gen_range(0..=full);
            let mut fresh = vec![s];
            for &t in &family {
                fresh.push(s & t);
            }
            family.extend(fresh);
            family.sort_unstable();
            family.dedup();
        }
        // closing each new member against the old ones is not enough once
        // intersections of intersections appear, so finish to a fixpoint
        loop {
            let mut grown = family.clone();
            for &a in &family {
                for &b in &family {
                    grown.push(a & b);
                }
            }
            grown.sort_unstable();
            grown.dedup();
            if grown.len() == family.len() {
                break;
            }
            family = grown;
        }
        if family.len() > max_elements {
            continue;
        }
        family.sort_by_key(|m| (m.count_ones(), *m));
        let labels = family.iter().map(|&m| set_label(&bits_to_vec(m))).collect();
        return FiniteLattice::from_leq("random", labels, |a, b| family[a] & !family[b] == 0)
            .expect("a finite Moore family is a lattice");
    }
}

/// A random partial order on `m` points as a reflexive, transitive relation
/// `leq[x][y]`. Edges only run from lower to higher index.
pub fn random_poset<R: Rng>(rng: &mut R, m: usize) -> Vec<Vec<bool>> {
    let mut leq = vec![vec![false; m]; m];
    for x in 0..m {
        leq[x][x] = true;
        for y in x + 1..m {
            leq[x][y] = rng.gen_bool(0.35);
        }
    }
    transitive_closure(&mut leq);
    leq
}

fn transitive_closure(rel: &mut [Vec<bool>]) {
    let n = rel.len();
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
}

/// Down-sets of a poset as bitmasks, sorted by size then value.
pub fn down_sets(leq: &[Vec<bool>]) -> Vec<u32> {
    let m = leq.len();
    let mut out: Vec<u32> = (0..1u32 << m)
        .filter(|&mask| {
            (0..m).all(|y| mask >> y & 1 == 0 || (0..m).all(|x| !leq[x][y] || mask >> x & 1 == 1))
        })
        .collect();
    out.sort_by_key(|m| (m.count_ones(), *m));
    out
}

/// The lattice of down-sets of `leq`, ordered by inclusion. Always distributive.
pub fn downset_lattice(leq: &[Vec<bool>]) -> FiniteLattice {
    let sets = down_sets(leq);
    let labels = sets.iter().map(|&m| set_label(&bits_to_vec(m))).collect();
    FiniteLattice::from_leq("downsets", labels, |a, b| sets[a] & !sets[b] == 0)
        .expect("down-sets form a lattice")
}

pub fn random_downset_lattice<R: Rng>(rng: &mut R, max_points: usize) -> FiniteLattice {
    let m = rng.gen_range(0..=max_points);
    downset_lattice(&random_poset(rng, m))
}

/// A monotone map `q → p` between posets. Falls back to a constant map when
/// a random greedy assignment gets stuck.
pub fn random_monotone_map<R: Rng>(rng: &mut R, q: &[Vec<bool>], p: &[Vec<bool>]) -> Vec<usize> {
    assert!(!p.is_empty() || q.is_empty());
    'attempt: for _ in 0..20 {
        let mut g: Vec<usize> = Vec::with_capacity(q.len());
        // indices are a linear extension of every generated poset
        for y in 0..q.len() {
            let candidates: Vec<usize> =
                (0..p.len()).filter(|&c| (0..y).all(|x| !q[x][y] || p[g[x]][c])).collect();
            match candidates.choose(rng) {
                Some(&c) => g.push(c),
                None => continue 'attempt,
            }
        }
        return g;
    }
    let c = rng.gen_range(0..p.len());
    vec![c; q.len()]
}

/// Preimage along `g: Q → P` as a map of down-set lattices `O(P) → O(Q)`,
/// in the index order of [`downset_lattice`]. Preimage keeps arbitrary
/// unions and intersections, so the result is a complete homomorphism.
pub fn preimage_map(p: &[Vec<bool>], q: &[Vec<bool>], g: &[usize]) -> Vec<usize> {
    let (ps, qs) = (down_sets(p), down_sets(q));
    ps.iter()
        .map(|&d| {
            let pre = (0..q.len()).filter(|&y| d >> g[y] & 1 == 1).fold(0u32, |acc, y| acc | 1 << y);
            qs.iter().position(|&e| e == pre).expect("preimage of a down-set is a down-set")
        })
        .collect()
}

/// A space on 1 to `max_points` points from a random preorder.
pub fn random_space<R: Rng>(rng: &mut R, max_points: usize) -> FiniteSpace {
    let n = rng.gen_range(1..=max_points);
    let mut rel = vec![vec![false; n]; n];
    for (x, row) in rel.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            *cell = x == y || rng.gen_bool(0.2);
        }
    }
    transitive_closure(&mut rel);
    let points = (0..n).map(|i| format!("x{i}")).collect();
    FiniteSpace::from_preorder("random", points, |x, y| rel[x][y])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_lattice() {
        let a = random_lattice(&mut rng(7), 10);
        let b = random_lattice(&mut rng(7), 10);
        assert_eq!(a, b);
        assert!(a.len() <= 10);
    }

    #[test]
    fn downset_lattices_are_distributive() {
        let mut r = rng(1);
        for _ in 0..30 {
            assert!(random_downset_lattice(&mut r, 5).is_distributive().distributive);
        }
    }

    #[test]
    fn preimage_maps_are_complete() {
        let mut r = rng(3);
        for _ in 0..20 {
            let p = random_poset(&mut r, 4);
            let q = random_poset(&mut r, 3);
            let g = random_monotone_map(&mut r, &q, &p);
            let (lp, lq) = (downset_lattice(&p), downset_lattice(&q));
            let h = crate::hom::check_hom(preimage_map(&p, &q, &g), &lp, &lq).unwrap();
            assert_eq!(h.level(), crate::hom::HomLevel::Complete);
        }
    }
}

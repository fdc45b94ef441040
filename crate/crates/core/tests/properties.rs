use proptest::prelude::*;

use latspace::catlab::{close, validate_table, SubcategoryKind, TableDoc};
use latspace::check::{hat_laws, lattice_laws, Status};
use latspace::hom::{check_hom, HomLevel};
use latspace::lattice::{load_lattice, FiniteLattice};
use latspace::random;
use latspace::topology::{load_space, FiniteSpace};

fn lattice(seed: u64, max: usize) -> FiniteLattice {
    random::random_lattice(&mut random::rng(seed), max)
}

fn lub(l: &FiniteLattice, set: &[usize]) -> usize {
    let uppers: Vec<usize> = l.elements().filter(|&u| set.iter().all(|&s| l.leq(s, u))).collect();
    *uppers.iter().find(|&&u| uppers.iter().all(|&v| l.leq(u, v))).unwrap()
}

fn glb(l: &FiniteLattice, set: &[usize]) -> usize {
    let lowers: Vec<usize> = l.elements().filter(|&u| set.iter().all(|&s| l.leq(u, s))).collect();
    *lowers.iter().find(|&&u| lowers.iter().all(|&v| l.leq(v, u))).unwrap()
}

/// Brute-force search for five distinct elements forming N5 or M3 as a
/// sublattice, using only the order.
fn has_forbidden(l: &FiniteLattice) -> bool {
    let n = l.len();
    let incomparable = |a: usize, b: usize| !l.leq(a, b) && !l.leq(b, a);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if x == y || y == z || x == z {
                    continue;
                }
                let (j, m) = (lub(l, &[x, y]), glb(l, &[x, y]));
                let pairs_ok = |p: usize, q: usize| lub(l, &[p, q]) == j && glb(l, &[p, q]) == m;
                // diamond: three pairwise incomparable elements, same joins and meets
                if incomparable(x, y) && incomparable(y, z) && incomparable(x, z) && pairs_ok(x, z) && pairs_ok(y, z) {
                    return true;
                }
                // pentagon: x < y, z incomparable to both, same join and meet with z
                if l.lt(x, y)
                    && incomparable(x, z)
                    && incomparable(y, z)
                    && lub(l, &[x, z]) == lub(l, &[y, z])
                    && glb(l, &[x, z]) == glb(l, &[y, z])
                {
                    return true;
                }
            }
        }
    }
    false
}

fn subset_preserved(f: &[usize], s: &FiniteLattice, t: &FiniteLattice) -> bool {
    let n = s.len();
    (0..1u32 << n).all(|mask| {
        let set: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let image: Vec<usize> = set.iter().map(|&a| f[a]).collect();
        f[lub(s, &set)] == lub(t, &image) && f[glb(s, &set)] == glb(t, &image)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws_hold(seed in any::<u64>()) {
        let l = lattice(seed, 10);
        prop_assert_eq!(lattice_laws(&l).status, Status::Pass);
        prop_assert_eq!(hat_laws(&l).status, Status::Pass);
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let l = lattice(seed, 10);
        let back = l.dualize().dualize();
        prop_assert_eq!(back.name(), l.name());
        prop_assert_eq!(&back, &l);
        let d = l.dualize();
        for a in l.elements() {
            for b in l.elements() {
                prop_assert_eq!(d.leq(a, b), l.leq(b, a));
            }
        }
    }

    #[test]
    fn distributive_iff_no_forbidden(seed in any::<u64>()) {
        let l = lattice(seed, 8);
        let v = l.is_distributive();
        prop_assert_eq!(v.distributive, !has_forbidden(&l));
        prop_assert_eq!(v.distributive, v.forbidden.is_none());
    }

    #[test]
    fn document_round_trip(seed in any::<u64>()) {
        let l = lattice(seed, 10);
        let text = serde_json::to_string(&l.to_doc()).unwrap();
        let back = load_lattice(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, l);
    }

    #[test]
    fn complete_level_matches_subset_oracle(seed in any::<u64>(), map in prop::collection::vec(0usize..16, 16)) {
        let mut rng = random::rng(seed);
        let s = random::random_lattice(&mut rng, 6);
        let t = random::random_lattice(&mut rng, 6);
        let f: Vec<usize> = map.iter().take(s.len()).map(|&x| x % t.len()).collect();
        if let Ok(h) = check_hom(f.clone(), &s, &t) {
            prop_assert_eq!(h.level() == HomLevel::Complete, subset_preserved(&f, &s, &t));
        }
    }

    #[test]
    fn preimage_homs_pass_subset_oracle(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let p = random::random_poset(&mut rng, 3);
        let q = random::random_poset(&mut rng, 3);
        prop_assume!(!p.is_empty());
        let g = random::random_monotone_map(&mut rng, &q, &p);
        let (lp, lq) = (random::downset_lattice(&p), random::downset_lattice(&q));
        let f = random::preimage_map(&p, &q, &g);
        prop_assert!(subset_preserved(&f, &lp, &lq));
        prop_assert_eq!(check_hom(f, &lp, &lq).unwrap().level(), HomLevel::Complete);
    }

    #[test]
    fn closure_operator_laws(n in 2usize..7, triples in prop::collection::vec((0usize..7, 0usize..7, 0usize..7), 0..8), seeds in prop::collection::vec(prop::collection::vec(0usize..7, 0..4), 2)) {
        let doc = TableDoc {
            name: String::new(),
            objects: (0..n).map(|i| format!("o{i}")).collect(),
            zero: Some(0),
            ses: triples.iter().map(|&(a, b, c)| [a % n, b % n, c % n]).collect(),
        };
        let t = validate_table(&doc).unwrap();
        let a: Vec<usize> = seeds[0].iter().map(|x| x % n).collect();
        let mut b: Vec<usize> = seeds[1].iter().map(|x| x % n).collect();
        b.extend(&a);
        for kind in SubcategoryKind::ALL {
            let ca = close(&t, &a, kind).unwrap();
            let cb = close(&t, &b, kind).unwrap();
            prop_assert!(a.iter().all(|x| ca.contains(x)));
            prop_assert_eq!(close(&t, &ca, kind).unwrap(), ca.clone());
            prop_assert!(ca.iter().all(|x| cb.contains(x)));
        }
    }

    #[test]
    fn preorder_spaces_validate(seed in any::<u64>()) {
        let x = random::random_space(&mut random::rng(seed), 6);
        let again = load_space(&x.to_doc()).unwrap();
        prop_assert_eq!(&again, &x);
        let lattice = x.closed_set_lattice();
        prop_assert!(lattice.is_distributive().distributive);
        prop_assert_eq!(lattice.len(), x.closed_sets().len());
    }
}

#[test]
fn from_preorder_of_a_chain() {
    let x = FiniteSpace::from_preorder("c", vec!["a".into(), "b".into(), "c".into()], |p, q| p <= q);
    assert_eq!(x.closed_sets(), &[vec![], vec![0], vec![0, 1], vec![0, 1, 2]]);
}

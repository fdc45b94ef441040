//! The contravariant map on meet-prime spectra induced by a complete
//! homomorphism, shown on a collapse of chains and on preimage maps of
//! down-set lattices.

use latspace::check::hom_suite;
use latspace::corpus;
use latspace::hom::check_hom;
use latspace::random;
use latspace::space::pointfree_map;

fn main() {
    let (c3, c2) = (corpus::chain(3), corpus::chain(2));
    let collapse = check_hom(vec![0, 1, 1], &c3, &c2).unwrap();
    let m = pointfree_map(&collapse).unwrap();
    for (c, e) in m.domain.iter().zip(&m.image) {
        println!("{} |-> {}", c2.label(*c), c3.label(*e));
    }
    print!("{}", hom_suite(&collapse).to_text());

    // O(P) -> O(Q) by preimage along a monotone map Q -> P
    let mut rng = random::rng(5);
    let p = random::random_poset(&mut rng, 4);
    let q = random::random_poset(&mut rng, 3);
    let g = random::random_monotone_map(&mut rng, &q, &p);
    let (lp, lq) = (random::downset_lattice(&p), random::downset_lattice(&q));
    let f = check_hom(random::preimage_map(&p, &q, &g), &lp, &lq).unwrap();
    println!("\nmonotone map {g:?}");
    print!("{}", hom_suite(&f).to_text());
}

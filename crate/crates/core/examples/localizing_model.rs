//! Powerset lattices as a model of localizing subcategories classified by a
//! discrete set of primes: everything is generated by g-primes and the
//! g-prime space is discrete.

use latspace::corpus;
use latspace::space::{build_space, hat, JoinClass, SpaceKind};

fn main() {
    for n in 1..=5 {
        let l = corpus::powerset(n);
        let s = build_space(&l, SpaceKind::Kgp);
        let generated = l.elements().filter(|&c| hat(&l, c, JoinClass::GPrime).unwrap() == c).count();
        println!(
            "n = {n}: {generated}/{} generated, {} points, {} closed sets, discrete {}",
            l.len(),
            s.points.len(),
            s.closed_family.len(),
            s.closed_family.len() == 1 << s.points.len()
        );
    }
}

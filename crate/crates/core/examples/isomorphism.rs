//! Finding an isomorphism with a shuffled copy and transporting the
//! classifying spaces along it.

use latspace::corpus;
use latspace::find_isomorphism;
use latspace::space::{induced_homeomorphism, SpaceKind};

fn main() {
    let l = corpus::a2_nullity();
    let copy = corpus::relabel_permuted(&l, &[3, 5, 0, 1, 4, 2]);
    println!("copy order: {}", copy.labels().join(" "));

    let iso = find_isomorphism(&l, &copy).expect("a relabelled lattice is isomorphic");
    for a in l.elements() {
        println!("  {} -> {} (index {})", l.label(a), copy.label(iso.apply(a)), iso.apply(a));
    }
    for kind in [SpaceKind::K, SpaceKind::Kgp, SpaceKind::MeetPrime] {
        let m = induced_homeomorphism(&iso, kind).unwrap();
        println!("{kind}: {} points, closed sets carried over: {}", m.pairs.len(), m.closed_sets_preserved);
    }
    println!("m3 ~ n5: {}", find_isomorphism(&corpus::m3(), &corpus::n5()).is_some());
}

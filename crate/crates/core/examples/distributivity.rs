//! Distributivity verdicts with their N5 / M3 witnesses.

use latspace::corpus;

fn main() {
    for l in [corpus::a2_nullity(), corpus::m3(), corpus::n5(), corpus::powerset(3), corpus::chain(4)] {
        let v = l.is_distributive();
        match v.forbidden {
            None => println!("{:<12} distributive", l.name()),
            Some(f) => {
                let [a, b, c] = v.witness.unwrap();
                let names: Vec<&str> = f.elements.iter().map(|&e| l.label(e)).collect();
                println!(
                    "{:<12} fails at ({}, {}, {}); {:?} on {}",
                    l.name(),
                    l.label(a),
                    l.label(b),
                    l.label(c),
                    f.shape,
                    names.join(" ")
                );
            }
        }
    }
}

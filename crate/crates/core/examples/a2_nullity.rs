//! The nullity lattice of the A2 path algebra and its classifying spaces.
//!
//! ```text
//! cargo run --example a2_nullity
//! ```

use latspace::catlab::{enumerate_subcategory_lattice, SubcategoryKind};
use latspace::corpus;
use latspace::space::{build_space, SpaceKind};
use latspace::spectrum_report;

fn main() {
    let table = corpus::a2_table();
    let lattice = enumerate_subcategory_lattice(&table, SubcategoryKind::Nullity).unwrap();
    println!("{} elements: {}", lattice.len(), lattice.labels().join(" "));
    print!("{}", spectrum_report(&lattice).to_text());

    for kind in [SpaceKind::K, SpaceKind::Kp, SpaceKind::Kgp] {
        let s = build_space(&lattice, kind);
        let closed: Vec<String> = s.closed_sets().map(|c| format!("{:?}", s.labels(c))).collect();
        println!("\n{kind}: points {:?}", s.labels(&s.points));
        println!("  {} closed sets: {}", closed.len(), closed.join(" "));
        match &s.topology.counterexample {
            None => println!("  a topology"),
            Some(v) => println!(
                "  not a topology: {:?} of the sets of {} and {} is {:?}",
                v.operation,
                lattice.label(v.generators.0),
                lattice.label(v.generators.1),
                s.labels(&v.result)
            ),
        }
    }
}

//! Fixed elements against closed sets for every kind of space, on a named
//! lattice (default: the A2 nullity lattice).
//!
//! ```text
//! cargo run --example classification -- m3
//! ```

use latspace::corpus;
use latspace::space::{verify_classification, SpaceKind};

fn main() {
    let which = std::env::args().nth(1).unwrap_or_else(|| "a2".into());
    let lattice = match which.as_str() {
        "a2" => corpus::a2_nullity(),
        "m3" => corpus::m3(),
        "n5" => corpus::n5(),
        other => match other.strip_prefix("chain").and_then(|n| n.parse().ok()) {
            Some(n) => corpus::chain(n),
            None => panic!("unknown lattice {other}; try a2, m3, n5 or chain4"),
        },
    };
    for kind in SpaceKind::ALL {
        let r = verify_classification(&lattice, kind);
        let fixed: Vec<&str> = r.fixed.iter().map(|&c| lattice.label(c)).collect();
        let note = if r.formal_empty_outside { " (formal empty set outside)" } else { "" };
        println!(
            "{:<28} {} closed sets, fixed {{{}}}, round trip {}{note}",
            kind.name(),
            r.closed_sets.len(),
            fixed.join(", "),
            if r.round_trip_ok { "ok" } else { "FAILED" }
        );
    }
}

//! All four subcategory lattices of a category table, read from a file or
//! the bundled A2 table.
//!
//! ```text
//! cargo run --example subcategory_lattices -- path/to/table.json
//! ```

use latspace::catlab::{enumerate_subcategory_lattice, is_monoform, validate_table, SubcategoryKind, TableDoc};
use latspace::corpus;
use latspace::space::{build_space, SpaceKind};

fn main() {
    let table = match std::env::args().nth(1) {
        Some(path) => {
            let doc: TableDoc = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
            validate_table(&doc).unwrap()
        }
        None => corpus::a2_table(),
    };
    let monoform: Vec<&str> = (0..table.len())
        .filter(|&x| is_monoform(&table, x).unwrap())
        .map(|x| table.objects[x].as_str())
        .collect();
    println!("monoform objects: {}", monoform.join(" "));

    for kind in SubcategoryKind::ALL {
        let l = enumerate_subcategory_lattice(&table, kind).unwrap();
        let k = build_space(&l, SpaceKind::K);
        println!(
            "{:<8} {:>2} elements, distributive {}, K has {} points and {} closed sets",
            kind.name(),
            l.len(),
            l.is_distributive().distributive,
            k.points.len(),
            k.closed_family.len()
        );
    }
}

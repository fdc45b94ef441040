//! Kolmogorov quotients and their comparison with the space of points of the
//! closed-set lattice.

use latspace::corpus;
use latspace::random;
use latspace::topology::{kq_vs_K_check, t0_quotient, FiniteSpace, SpaceDoc};

fn show(x: &FiniteSpace) {
    let q = t0_quotient(x);
    let v = kq_vs_K_check(x);
    println!(
        "{:<14} {} points -> {} classes {:?}; matches K: {}",
        x.name(),
        x.len(),
        q.classes.len(),
        q.quotient.points(),
        v.ok
    );
}

fn main() {
    let glued: SpaceDoc = serde_json::from_str(corpus::bundled_file("glued.space.json").unwrap()).unwrap();
    show(&corpus::sierpinski());
    show(&latspace::load_space(&glued).unwrap());
    show(&corpus::indiscrete_space(3));
    show(&corpus::discrete_space(3));

    let mut rng = random::rng(11);
    for _ in 0..5 {
        show(&random::random_space(&mut rng, 6));
    }
}

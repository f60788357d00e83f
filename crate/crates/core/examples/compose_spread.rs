//! Iterated shift compositions of a map and the exact spread sequence.

use diffnev::composition::{compose_chain, multiplicity_profile, spread_sequence};
use diffnev::walgebra::WRat;

fn main() {
    let r: WRat = "(w^2+z)/w".parse().unwrap();
    for k in 1..=3 {
        let c = compose_chain(&r, k);
        println!("k = {k}: degree {}, lowest terms {}", c.degree(), c.is_lowest_terms());
    }
    println!("R_z o R_(z-1) = {}", compose_chain(&r, 2).value());

    let p = multiplicity_profile(&r, 2);
    println!("depth 2 denominator factors:");
    for (h, e) in &p.factors {
        println!("  ({h})^{e}");
    }
    println!(
        "e0 = {}, ek = {}, fiber ramification = {}",
        p.e0,
        p.ek,
        p.fiber_ramification()
    );

    println!("k  d^k  ek  ratio");
    for row in spread_sequence(&r, 6).unwrap() {
        println!("{}  {}  {}  {}", row.k, row.dk, row.ek, row.ratio);
    }
}

//! Bezout coefficients and resultants over Q(z), plus the randomized suite.

use diffnev::suites::bezout_suite;
use diffnev::walgebra::{bezout, factorization, resultant, WPoly};

fn main() {
    let p: WPoly = "w^2 + z".parse().unwrap();
    let q: WPoly = "z*w - 1".parse().unwrap();
    let bp = bezout(&p, &q).unwrap();
    println!("P = {p}\nQ = {q}");
    println!("A = {}\nB = {}", bp.a, bp.b);
    println!("A P + B Q = {}", &(&bp.a * &p) + &(&bp.b * &q));
    println!("res(P, Q) = {}", bp.resultant);

    let shared: WPoly = "w^2 - 1".parse().unwrap();
    println!(
        "res(w^2 - 1, w - 1) = {}",
        resultant(&shared, &"w - 1".parse().unwrap())
    );
    println!(
        "bezout(w^2 - 1, w - 1) = {:?}",
        bezout(&shared, &"w - 1".parse().unwrap()).err()
    );

    let f = factorization(&"w^4 - z^2".parse().unwrap());
    for (h, e) in &f.factors {
        println!("factor ({h})^{e}");
    }

    let s = bezout_suite(1, 50);
    println!("suite: {}/{} passed", s.passed, s.count);
}

//! The local order inequality at a point, with its error budget.

use diffnev::exact::{rat, RatFunc};
use diffnev::local::{error_budget, verify_order_inequality};
use diffnev::suites::local_suite;
use diffnev::walgebra::WPoly;

fn main() {
    let zero = rat(0, 1);
    let cases = [
        ("w^2", "1", "1/z"),
        ("w^2", "w - 1", "z + 1"),
        ("z*w^2 + w", "w - 1/z", "1/z^3"),
    ];
    for (p, q, f) in cases {
        let (p, q): (WPoly, WPoly) = (p.parse().unwrap(), q.parse().unwrap());
        let f: RatFunc = f.parse().unwrap();
        let c = verify_order_inequality(&p, &q, &f, &zero).unwrap();
        println!(
            "P = {p}, Q = {q}, f = {f}: lhs {} >= rhs {} is {} ({:?})",
            c.lhs, c.rhs, c.holds, c.regime
        );
    }

    let b = error_budget(&"z*w^2 + 1".parse().unwrap(), &"w - 1".parse().unwrap(), &zero).unwrap();
    println!("budget: C(P) = {}, C(Q) = {}, E = {}", b.c_p, b.c_q, b.e);

    let s = local_suite(1, 200);
    println!("suite: {}/{} passed, regimes {:?}", s.passed, s.count, s.regimes);
}

use diffnev::exact::{rat, RatFunc, Rational, ZPoly};
use diffnev::local::{c_beta, error_budget, is_unit_at, pole_order_of_value, verify_order_inequality, Regime};
use diffnev::suites::{random_coprime_pair, random_local_tuple, rng, special_points};
use diffnev::walgebra::{bezout, gcd_w, WPoly};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::Rng;

fn ord(f: &RatFunc, beta: &Rational) -> i64 {
    f.ord_at(beta).finite().unwrap()
}

/// `c (z - beta)^(-n)`.
fn pole(beta: &Rational, n: u32, c: i64) -> RatFunc {
    let lin = ZPoly::from_coeffs(vec![-beta.clone(), rat(1, 1)]);
    RatFunc::new(ZPoly::from_int(c), lin.pow(n)).unwrap()
}

/// Integer-coefficient polynomial of exact degree `d` with nonzero constant term.
fn constant_wpoly(g: &mut rand_chacha::ChaCha8Rng, d: usize) -> WPoly {
    let mut c: Vec<RatFunc> = (0..=d).map(|_| RatFunc::from_int(g.gen_range(-4..=4))).collect();
    for i in [0, d] {
        if c[i].is_zero() {
            c[i] = RatFunc::from_int(1);
        }
    }
    WPoly::from_coeffs(c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_tuples_satisfy_the_inequality(seed in any::<u64>()) {
        let (p, q, f, beta) = random_local_tuple(&mut rng(seed));
        let c = verify_order_inequality(&p, &q, &f, &beta).unwrap();
        prop_assert!(c.holds, "lhs {} rhs {}", c.lhs, c.rhs);
    }

    #[test]
    fn deep_pole_orders_are_sharp(seed in any::<u64>(), extra in 1u32..=3, c in 1i64..=5) {
        let mut g = rng(seed);
        let (p, q) = random_coprime_pair(&mut g, 3);
        let (p, q) = if p.degree() >= q.degree() { (p, q) } else { (q, p) };
        let beta = special_points()[g.gen_range(0..6)].clone();
        let bound = &c_beta(&p, &beta) + &c_beta(&q, &beta);
        let n = bound.floor().to_integer().to_u32().unwrap_or(0) + extra;
        let f = pole(&beta, n, c);
        prop_assume!(!p.eval(&f).is_zero() && !q.eval(&f).is_zero());
        let check = verify_order_inequality(&p, &q, &f, &beta).unwrap();
        prop_assert_eq!(check.regime, Regime::DeepPole);
        for s in [&p, &q] {
            let m = s.degree().unwrap() as i64;
            let expected = m * n as i64 - ord(s.leading().unwrap(), &beta);
            prop_assert_eq!(pole_order_of_value(s, &f, &beta), Some(expected));
        }
    }

    #[test]
    fn budget_vanishes_for_unit_coefficients(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (d, e) = (g.gen_range(1..=3), g.gen_range(0..=2));
        let e = e.min(d);
        let (p, q) = (constant_wpoly(&mut g, d), constant_wpoly(&mut g, e));
        prop_assume!(gcd_w(&p, &q).is_one());
        let pair = bezout(&p, &q).unwrap();
        for beta in special_points() {
            if [&p, &q, &pair.a, &pair.b].iter().all(|s| is_unit_at(s, &beta)) {
                prop_assert_eq!(error_budget(&p, &q, &beta).unwrap().e, rat(0, 1));
            }
        }
    }
}

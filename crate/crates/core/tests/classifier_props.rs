use diffnev::classifier::{classify, conjugate_target, is_shift_exceptional, unconjugate_target, NormalForm};
use diffnev::composition::{compose_chain, exceptional_cycle_data, spread_sequence, CompositionError};
use diffnev::exact::{rat, RatFunc, Rational};
use diffnev::suites::{random_ratfunc, random_wpoly, rng};
use diffnev::walgebra::{WPoly, WRat};
use proptest::prelude::*;
use rand::Rng;

fn nonzero(g: &mut rand_chacha::ChaCha8Rng) -> RatFunc {
    loop {
        let c = random_ratfunc(g);
        if !c.is_zero() {
            return c;
        }
    }
}

fn polynomial_map() -> impl Strategy<Value = WRat> {
    any::<u64>().prop_map(|s| {
        let mut g = rng(s);
        let d = g.gen_range(2..=3);
        WRat::from_poly(random_wpoly(&mut g, d))
    })
}

fn inverse_power() -> impl Strategy<Value = (RatFunc, RatFunc, usize)> {
    (any::<u64>(), 2usize..=3).prop_map(|(s, d)| {
        let mut g = rng(s);
        (nonzero(&mut g), random_ratfunc(&mut g), d)
    })
}

fn random_map() -> impl Strategy<Value = WRat> {
    any::<u64>().prop_filter_map("degree at least 2", |s| {
        let mut g = rng(s);
        let (d, e) = (g.gen_range(1..=2), g.gen_range(0..=2));
        WRat::new(random_wpoly(&mut g, d), random_wpoly(&mut g, e))
            .ok()
            .filter(|r| r.degree() >= 2)
    })
}

fn small_targets() -> Vec<Rational> {
    let mut v = Vec::new();
    for n in -3i64..=3 {
        for d in 1i64..=2 {
            let q = rat(n, d);
            if !v.contains(&q) {
                v.push(q);
            }
        }
    }
    v
}

fn exceptional_count(r: &WRat) -> usize {
    small_targets()
        .iter()
        .filter(|a| is_shift_exceptional(r, a).unwrap().is_exceptional)
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn polynomial_maps_fix_infinity_with_full_ramification(r in polynomial_map()) {
        prop_assert_eq!(classify(&r).unwrap(), NormalForm::Polynomial);
        let c = exceptional_cycle_data(&r, 8);
        prop_assert_eq!(c.m, Some(1));
        prop_assert_eq!(c.e, Some(r.degree() as f64));
    }

    #[test]
    fn inverse_powers_reconstruct_and_compose_to_polynomials((a, b, d) in inverse_power()) {
        let nf = NormalForm::InversePower { a: a.clone(), b: b.clone(), d };
        let r = nf.reconstruct().unwrap();
        let found = classify(&r).unwrap();
        prop_assert_eq!(&found, &nf);
        prop_assert_eq!(found.reconstruct().unwrap(), r.clone());
        prop_assert_eq!(compose_chain(&r, 2).den_degree(), 0);
        prop_assert_eq!(spread_sequence(&r, 2).unwrap_err(), CompositionError::PolynomialComposite);
    }

    #[test]
    fn at_most_two_exceptional_points(r in random_map()) {
        prop_assert!(exceptional_count(&r) <= 2);
    }

    #[test]
    fn conjugation_round_trips(r in random_map(), s in any::<u64>()) {
        let a = random_ratfunc(&mut rng(s));
        let c = conjugate_target(&r, &a);
        prop_assert_eq!(c.degree(), r.degree());
        prop_assert_eq!(unconjugate_target(&c, &a), r);
    }

    #[test]
    fn conjugated_polynomials_have_the_target_exceptional(s in any::<u64>(), a in prop::sample::select(small_targets())) {
        let mut g = rng(s);
        let poly = WRat::from_poly(random_wpoly(&mut g, 2));
        let r = unconjugate_target(&poly, &RatFunc::constant(a.clone()));
        prop_assert!(is_shift_exceptional(&r, &a).unwrap().is_exceptional);
        prop_assert!(exceptional_count(&r) <= 2);
    }
}

#[test]
fn conjugated_monomial_moves_its_exceptional_point() {
    // 1/w + 1 carries infinity to 1 and 0 to infinity
    let r = unconjugate_target(&WRat::from_poly(WPoly::w().pow(2)), &RatFunc::from_int(1));
    let found: Vec<Rational> = small_targets()
        .into_iter()
        .filter(|a| is_shift_exceptional(&r, a).unwrap().is_exceptional)
        .collect();
    assert_eq!(found, vec![rat(1, 1)]);
}

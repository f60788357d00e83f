use diffnev::composition::{compose_chain, compose_chains, profile_of, spread_sequence, CompositionError, Direction};
use diffnev::exact::rat;
use diffnev::suites::{random_wpoly, rng};
use diffnev::walgebra::WRat;
use proptest::prelude::*;
use rand::Rng;

const MAPS: [&str; 5] = [
    "(w^2+z)/w",
    "z/(w-1)^2+1",
    "w^2+z",
    "(w^3+z*w+1)/(w-z)",
    "(w^2+1)/(z*w-1)",
];

fn map(s: &str) -> WRat {
    s.parse().unwrap()
}

fn random_map() -> impl Strategy<Value = WRat> {
    any::<u64>().prop_filter_map("degree at least 1", |s| {
        let mut g = rng(s);
        let (d, e) = (g.gen_range(1..=2), g.gen_range(0..=2));
        let (p, q) = (random_wpoly(&mut g, d), random_wpoly(&mut g, e));
        WRat::new(p, q).ok().filter(|r| r.degree() >= 1)
    })
}

fn check_chains(r: &WRat, kmax: usize) -> Result<(), TestCaseError> {
    let d = r.degree();
    for c in compose_chains(r, kmax, Direction::Backward) {
        prop_assert_eq!(c.degree(), d.pow(c.depth as u32));
        prop_assert!(c.is_lowest_terms());
        prop_assert_eq!(c.value().degree(), c.degree());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn degree_law(r in random_map()) {
        check_chains(&r, 3)?;
    }

    #[test]
    fn cocycle(r in random_map(), (j, k) in prop::sample::select(vec![(1usize, 1usize), (1, 2), (2, 1)])) {
        let whole = compose_chain(&r, j + k);
        let outer = compose_chain(&r, j);
        let inner = compose_chain(&r, k).value().shift_z(-(j as i64));
        prop_assert_eq!(whole.value(), &outer.value().compose(&inner));
    }

    #[test]
    fn fiber_mass_and_ramification(r in random_map(), k in 1usize..=2) {
        let d = r.degree() as u64;
        let p = profile_of(&compose_chain(&r, k));
        prop_assert_eq!(p.fiber_mass(), d.pow(k as u32));
        prop_assert!(p.ek <= p.degree);
        let p1 = profile_of(&compose_chain(&r, 1));
        prop_assert!(p1.fiber_ramification() <= 2 * d - 2);
    }
}

#[test]
fn degree_law_on_test_maps() {
    for m in MAPS {
        check_chains(&map(m), 4).unwrap();
    }
}

#[test]
fn riemann_hurwitz_at_depth_one() {
    for m in MAPS {
        let r = map(m);
        let d = r.degree() as u64;
        let p = profile_of(&compose_chain(&r, 1));
        assert!(p.fiber_ramification() <= 2 * d - 2, "{m}");
        assert_eq!(p.fiber_mass(), d, "{m}");
    }
}

#[test]
fn spread_decays_for_generic_maps() {
    for m in ["(w^2+z)/w", "(w^2+1)/(z*w-1)"] {
        let rows = spread_sequence(&map(m), 6).unwrap();
        assert!(rows[5].ratio < rows[0].ratio, "{m}");
    }
    let rows = spread_sequence(&map("(w^3+z*w+1)/(w-z)"), 4).unwrap();
    assert!(rows[3].ratio < rows[0].ratio);
    assert_eq!(rows[0].ratio, rat(2, 3));
}

#[test]
fn polynomial_composites_are_reported() {
    for m in ["w^2+z", "z/(w-1)^2+1"] {
        assert_eq!(
            spread_sequence(&map(m), 3).unwrap_err(),
            CompositionError::PolynomialComposite
        );
    }
}

//! Seeded random instances and the randomized Bezout and local-order suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::exact::{rat, RatFunc, Rational, ZPoly};
use crate::local::{verify_order_inequality, Regime};
use crate::walgebra::{bezout, gcd_w, resultant, WAlgebraError, WPoly};

/// Points where random coefficients are built to vanish or blow up.
pub fn special_points() -> Vec<Rational> {
    vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(2, 1), rat(1, 2), rat(-1, 2)]
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn linear_factors(rng: &mut ChaCha8Rng, max: usize) -> ZPoly {
    let pts = special_points();
    let n = rng.gen_range(0..=max);
    (0..n).fold(ZPoly::one(), |acc, _| {
        let p = pts.choose(rng).expect("nonempty");
        &acc * &ZPoly::from_coeffs(vec![-p.clone(), rat(1, 1)])
    })
}

/// `c * prod (z - p_i) / prod (z - q_j)` with small integer `c` and roots
/// among [`special_points`].
pub fn random_ratfunc(rng: &mut ChaCha8Rng) -> RatFunc {
    let c = loop {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            break c;
        }
    };
    let num = linear_factors(rng, 2).scale(&rat(c, 1));
    let num = if rng.gen_bool(0.3) {
        &num + &ZPoly::from_ints(&[rng.gen_range(-2..=2)])
    } else {
        num
    };
    let den = linear_factors(rng, 2);
    RatFunc::new(num, den).unwrap_or_else(|_| RatFunc::one())
}

/// A polynomial of exact degree `deg`; lower coefficients are zero with probability 1/4.
pub fn random_wpoly(rng: &mut ChaCha8Rng, deg: usize) -> WPoly {
    let mut coeffs: Vec<RatFunc> = (0..deg)
        .map(|_| {
            if rng.gen_bool(0.25) {
                RatFunc::zero()
            } else {
                random_ratfunc(rng)
            }
        })
        .collect();
    let lead = loop {
        let c = random_ratfunc(rng);
        if !c.is_zero() {
            break c;
        }
    };
    coeffs.push(lead);
    WPoly::from_coeffs(coeffs)
}

/// Coprime `(P, Q)` with `1 <= deg <= max_deg`.
pub fn random_coprime_pair(rng: &mut ChaCha8Rng, max_deg: usize) -> (WPoly, WPoly) {
    loop {
        let d = rng.gen_range(1..=max_deg);
        let e = rng.gen_range(1..=max_deg);
        let p = random_wpoly(rng, d);
        let q = random_wpoly(rng, e);
        if gcd_w(&p, &q).is_one() {
            return (p, q);
        }
    }
}

/// `(P G, Q G)` with a shared factor `G` of degree at least 1, total degree at most `max_deg`.
pub fn random_planted_pair(rng: &mut ChaCha8Rng, max_deg: usize) -> (WPoly, WPoly) {
    let dg = rng.gen_range(1..=max_deg.saturating_sub(1).max(1));
    let g = random_wpoly(rng, dg);
    let room = max_deg.saturating_sub(dg);
    let (dp, dq) = (rng.gen_range(0..=room), rng.gen_range(0..=room));
    let p = random_wpoly(rng, dp);
    let q = random_wpoly(rng, dq);
    (&p * &g, &q * &g)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub seed: u64,
    pub count: usize,
    pub passed: usize,
    pub failures: Vec<String>,
    /// Per-regime counts for the local suite.
    pub regimes: Vec<(String, usize)>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.passed == self.count && self.failures.is_empty()
    }
}

/// `count` coprime pairs checked for `A P + B Q = 1`, the degree bounds and a
/// nonzero resultant, then `count / 5` planted pairs that must be rejected.
pub fn bezout_suite(seed: u64, count: usize) -> SuiteSummary {
    let mut rng = rng(seed);
    let mut s = SuiteSummary {
        seed,
        ..Default::default()
    };
    for i in 0..count {
        let (p, q) = random_coprime_pair(&mut rng, 4);
        s.count += 1;
        match bezout(&p, &q) {
            Ok(bp) => {
                let identity = (&(&bp.a * &p) + &(&bp.b * &q)).is_one();
                let deg_a = bp.a.degree().is_none_or(|k| k < q.degree().unwrap_or(0));
                let deg_b = bp.b.degree().is_none_or(|k| k < p.degree().unwrap_or(0));
                if identity && deg_a && deg_b && !bp.resultant.is_zero() {
                    s.passed += 1;
                } else {
                    s.failures.push(format!("pair {i}: P = {p}, Q = {q}"));
                }
            }
            Err(e) => s.failures.push(format!("pair {i}: {e}: P = {p}, Q = {q}")),
        }
    }
    for i in 0..count / 5 {
        let (p, q) = random_planted_pair(&mut rng, 4);
        s.count += 1;
        let zero_res = resultant(&p, &q).is_zero();
        match bezout(&p, &q) {
            Err(WAlgebraError::CommonFactor) if zero_res => s.passed += 1,
            other => s.failures.push(format!("planted {i}: {other:?}: P = {p}, Q = {q}")),
        }
    }
    s
}

/// A random input for the local inequality: coprime `P, Q` with
/// `deg P >= deg Q`, a nonzero `f` with `P(f), Q(f) != 0`, and `beta`.
pub fn random_local_tuple(rng: &mut ChaCha8Rng) -> (WPoly, WPoly, RatFunc, Rational) {
    let pts = special_points();
    loop {
        let d = rng.gen_range(1..=3);
        let e = rng.gen_range(0..=d);
        let p = random_wpoly(rng, d);
        let q = random_wpoly(rng, e);
        if !gcd_w(&p, &q).is_one() {
            continue;
        }
        let f = random_ratfunc(rng);
        if f.is_zero() || p.eval(&f).is_zero() || q.eval(&f).is_zero() {
            continue;
        }
        let beta = pts.choose(rng).expect("nonempty").clone();
        return (p, q, f, beta);
    }
}

pub fn local_suite(seed: u64, count: usize) -> SuiteSummary {
    let mut rng = rng(seed);
    let mut s = SuiteSummary {
        seed,
        ..Default::default()
    };
    let mut regimes = [0usize; 3];
    for i in 0..count {
        let (p, q, f, beta) = random_local_tuple(&mut rng);
        s.count += 1;
        match verify_order_inequality(&p, &q, &f, &beta) {
            Ok(c) => {
                regimes[match c.regime {
                    Regime::DeepPole => 0,
                    Regime::Bezout => 1,
                    Regime::Trivial => 2,
                }] += 1;
                if c.holds {
                    s.passed += 1;
                } else {
                    s.failures.push(format!(
                        "tuple {i}: lhs {} < rhs {}: P = {p}, Q = {q}, f = {f}, beta = {beta}",
                        c.lhs, c.rhs
                    ));
                }
            }
            Err(e) => {
                s.failures.push(format!("tuple {i}: {e}"));
            }
        }
    }
    s.regimes = vec![
        ("deep-pole".into(), regimes[0]),
        ("bezout".into(), regimes[1]),
        ("trivial".into(), regimes[2]),
    ];
    s
}

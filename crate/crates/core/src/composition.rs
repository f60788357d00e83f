//! Shifted composition chains `R_z o R_{z-1} o ... o R_{z-k+1}`, their
//! denominator multiplicity profiles and the spread statistic.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{RatFunc, Rational};
use crate::poly::{factor, gcd, intpoly, IntBiPoly};
use crate::walgebra::{Point, WPoly, WRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompositionError {
    #[error("the two-step composite is a polynomial in w; the spread statistic is not informative")]
    PolynomialComposite,
    #[error("the map must have degree at least 1 in w")]
    Degenerate,
}

/// Which way the coefficient shifts run along the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Direction {
    /// `R_z o R_{z-1} o ... o R_{z-k+1}`.
    #[default]
    Backward,
    /// `R_{z+k-1} o ... o R_{z+1} o R_z`.
    Forward,
}

/// A depth-`k` composite `P_k / Q_k` in lowest terms.
#[derive(Clone, Debug)]
pub struct CompositionChain {
    pub base: WRat,
    pub depth: usize,
    pub direction: Direction,
    num: IntBiPoly,
    den: IntBiPoly,
    value: OnceLock<WRat>,
}

impl CompositionChain {
    /// The composite as a normalized rational function.
    pub fn value(&self) -> &WRat {
        self.value.get_or_init(|| WRat::from_coprime_int(&self.num, &self.den))
    }

    /// `max(deg P_k, deg Q_k)`.
    pub fn degree(&self) -> usize {
        self.num.deg_w().unwrap_or(0).max(self.den.deg_w().unwrap_or(0))
    }

    /// Integer numerator and denominator (coprime in Q(z)[w]).
    pub fn int_parts(&self) -> (&IntBiPoly, &IntBiPoly) {
        (&self.num, &self.den)
    }

    pub fn den_degree(&self) -> usize {
        self.den.deg_w().unwrap_or(0)
    }

    pub fn num_degree(&self) -> usize {
        self.num.deg_w().unwrap_or(0)
    }

    /// Full gcd check of numerator and denominator.
    pub fn is_lowest_terms(&self) -> bool {
        gcd::gcd(&self.num, &self.den).deg_w() == Some(0)
    }
}

/// Numerator and denominator of `R` with coefficients in Z[z].
pub fn int_map(r: &WRat) -> (IntBiPoly, IntBiPoly) {
    let (un, pn) = r.num().to_int();
    let (ud, pd) = r.den().to_int();
    // R = (un / ud) * pn / pd
    let ratio = un.checked_div(&ud).expect("nonzero unit");
    let (a, da) = intpoly::from_zpoly(ratio.num());
    let (b, db) = intpoly::from_zpoly(ratio.den());
    // ratio = (a / da) / (b / db) = (a * db) / (b * da)
    let top = intpoly::scale(&a, &db);
    let bot = intpoly::scale(&b, &da);
    let n = pn.scale_z(&top);
    let d = pd.scale_z(&bot);
    strip_common_content(n, d)
}

fn strip_common_content(n: IntBiPoly, d: IntBiPoly) -> (IntBiPoly, IntBiPoly) {
    let mut g = d.content_z();
    for row in n.rows() {
        if g.len() == 1 && g[0].is_one() {
            break;
        }
        g = intpoly::gcd(&g, row);
    }
    if g.is_empty() || (g.len() == 1 && g[0].is_one()) {
        return (n, d);
    }
    (
        n.div_z(&g).expect("common content divides"),
        d.div_z(&g).expect("common content divides"),
    )
}

/// One homogeneous substitution: `(P^h(a, b), Q^h(a, b))` with `deg = d`.
fn substitute(p: &IntBiPoly, q: &IntBiPoly, d: usize, a: &IntBiPoly, b: &IntBiPoly) -> (IntBiPoly, IntBiPoly) {
    let mut apow = vec![IntBiPoly::one()];
    let mut bpow = vec![IntBiPoly::one()];
    for i in 1..=d {
        apow.push(apow[i - 1].mul(a));
        bpow.push(bpow[i - 1].mul(b));
    }
    let mut n = IntBiPoly::zero();
    let mut m = IntBiPoly::zero();
    for i in 0..=d {
        let (pi, qi) = (p.row(i), q.row(i));
        if pi.is_empty() && qi.is_empty() {
            continue;
        }
        let mono = apow[i].mul(&bpow[d - i]);
        if !pi.is_empty() {
            n = n.add(&mono.scale_z(pi));
        }
        if !qi.is_empty() {
            m = m.add(&mono.scale_z(qi));
        }
    }
    (n, m)
}

/// All chains of depth `0..=kmax`, each built from the previous one.
pub fn compose_chains(r: &WRat, kmax: usize, direction: Direction) -> Vec<CompositionChain> {
    let d = r.degree();
    let (p, q) = int_map(r);
    let mut a = IntBiPoly::w();
    let mut b = IntBiPoly::one();
    let mut out = Vec::with_capacity(kmax + 1);
    for k in 0..=kmax {
        if k > 0 {
            let (sa, sb) = (a.shift_z(&BigInt::from(-1)), b.shift_z(&BigInt::from(-1)));
            let (n, m) = substitute(&p, &q, d, &sa, &sb);
            let (n, m) = strip_common_content(n, m);
            let (n, m) = if gcd::coprime_certificate(&n, &m) {
                (n, m)
            } else {
                let g = gcd::gcd(&n, &m);
                (
                    n.div_exact(&g).expect("gcd divides"),
                    m.div_exact(&g).expect("gcd divides"),
                )
            };
            a = n;
            b = m;
        }
        let (num, den) = match direction {
            Direction::Backward => (a.clone(), b.clone()),
            Direction::Forward if k > 1 => {
                let s = BigInt::from(k as i64 - 1);
                (a.shift_z(&s), b.shift_z(&s))
            }
            Direction::Forward => (a.clone(), b.clone()),
        };
        out.push(CompositionChain {
            base: r.clone(),
            depth: k,
            direction,
            num,
            den,
            value: OnceLock::new(),
        });
    }
    out
}

/// The depth-`k` chain `R_z o R_{z-1} o ... o R_{z-k+1}` in lowest terms.
pub fn compose_chain(r: &WRat, k: usize) -> CompositionChain {
    compose_chains(r, k, Direction::Backward).pop().expect("k + 1 chains")
}

/// The forward chain `R_{z+k-1} o ... o R_z`.
pub fn compose_chain_forward(r: &WRat, k: usize) -> CompositionChain {
    compose_chains(r, k, Direction::Forward).pop().expect("k + 1 chains")
}

/// Denominator factorization of a chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    pub depth: usize,
    /// Monic irreducible factors `H_i` of `Q_k` with multiplicities `e_i`.
    pub factors: Vec<(WPoly, u32)>,
    /// `Q_k = unit * prod H_i^{e_i}`.
    pub unit: RatFunc,
    /// `d^k - deg Q_k`.
    pub e0: u64,
    /// `max(e0, e_1, ..., e_m)`.
    pub ek: u64,
    /// `d^k`.
    pub degree: u64,
}

impl MultiplicityProfile {
    /// `sum e_i deg H_i`.
    pub fn denominator_degree(&self) -> u64 {
        self.factors
            .iter()
            .map(|(h, e)| *e as u64 * h.degree().unwrap_or(0) as u64)
            .sum()
    }

    /// Mass of the fiber over infinity: finite poles plus the pole at `w = inf`.
    pub fn fiber_mass(&self) -> u64 {
        self.denominator_degree() + self.e0
    }

    /// `sum deg H_i (e_i - 1) + max(e0 - 1, 0)`.
    pub fn fiber_ramification(&self) -> u64 {
        self.factors
            .iter()
            .map(|(h, e)| h.degree().unwrap_or(0) as u64 * (*e as u64 - 1))
            .sum::<u64>()
            + self.e0.saturating_sub(1)
    }

    pub fn ratio(&self) -> Rational {
        Rational::new(BigInt::from(self.ek), BigInt::from(self.degree))
    }
}

pub fn profile_of(chain: &CompositionChain) -> MultiplicityProfile {
    let d = chain.base.degree() as u64;
    let degree = d.pow(chain.depth as u32);
    let den = &chain.den;
    let e0 = degree - den.deg_w().unwrap_or(0) as u64;
    let factors: Vec<(WPoly, u32)> = if den.deg_w().unwrap_or(0) == 0 {
        Vec::new()
    } else {
        factor::factor(den)
            .into_iter()
            .map(|(h, e)| (WPoly::from_int(&h).monic(), e))
            .collect()
    };
    let qk = WPoly::from_int(den);
    let unit = qk.leading().expect("nonzero denominator").clone();
    let ek = factors.iter().map(|(_, e)| *e as u64).max().unwrap_or(0).max(e0);
    MultiplicityProfile {
        depth: chain.depth,
        factors,
        unit,
        e0,
        ek,
        degree,
    }
}

pub fn multiplicity_profile(r: &WRat, k: usize) -> MultiplicityProfile {
    profile_of(&compose_chain(r, k))
}

/// One row of the spread sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpreadRow {
    pub k: usize,
    pub dk: u64,
    pub e0: u64,
    pub ek: u64,
    #[serde(serialize_with = "ser_rational")]
    pub ratio: Rational,
}

fn ser_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&crate::exact::rational::fmt_rational(q))
}

/// Exact ratios `e_k / d^k` for `k = 1..=kmax`.
pub fn spread_sequence(r: &WRat, kmax: usize) -> Result<Vec<SpreadRow>, CompositionError> {
    if r.degree() < 1 {
        return Err(CompositionError::Degenerate);
    }
    let chains = compose_chains(r, kmax.max(2), Direction::Backward);
    if chains[2].den_degree() == 0 {
        return Err(CompositionError::PolynomialComposite);
    }
    let rows = chains[1..=kmax]
        .iter()
        .map(|c| {
            let p = profile_of(c);
            SpreadRow {
                k: c.depth,
                dk: p.degree,
                e0: p.e0,
                ek: p.ek,
                ratio: p.ratio(),
            }
        })
        .collect();
    Ok(rows)
}

/// Layers `J_i = prod_{e_j >= i} H_j` for `i = 1..=max e_j`.
pub fn squarefree_layers(qk: &WPoly) -> Vec<WPoly> {
    let factors = crate::walgebra::squarefree_decomposition(qk);
    let emax = factors.iter().map(|(_, e)| *e).max().unwrap_or(0);
    (1..=emax)
        .map(|i| {
            factors
                .iter()
                .filter(|(_, e)| *e >= i)
                .fold(WPoly::one(), |acc, (h, _)| &acc * h)
        })
        .collect()
}

pub(crate) fn root_multiplicity(p: &WPoly, g: &RatFunc) -> u32 {
    let lin = WPoly::linear(g);
    let mut cur = p.clone();
    let mut count = 0;
    while !cur.is_zero() {
        match cur.exact_div(&lin) {
            Some(q) => {
                cur = q;
                count += 1;
            }
            None => break,
        }
    }
    count
}

/// Local degree of `w -> R(w)` at a point of P^1 over Q(z).
pub fn ramification_at(r: &WRat, g: &Point) -> u32 {
    let (p, q) = (r.num(), r.den());
    let value = r.eval_point(g);
    match (g, value) {
        (Point::Finite(x), Point::Finite(v)) => root_multiplicity(&(p - &q.scale(&v)), x),
        (Point::Finite(x), Point::Infinity) => root_multiplicity(q, x),
        (Point::Infinity, Point::Infinity) => (p.degree().unwrap_or(0) - q.degree().unwrap_or(0)) as u32,
        (Point::Infinity, Point::Finite(v)) => {
            let diff = p - &q.scale(&v);
            (q.degree().unwrap_or(0) - diff.degree().unwrap_or(0)) as u32
        }
    }
}

/// Return time of infinity under the shifted chain and its mean ramification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExceptionalCycleData {
    /// Least `m >= 1` with `(R_z o ... o R_{z-m+1})(inf) = inf`.
    pub m: Option<usize>,
    /// Ramification of the period-`m` chain at infinity.
    pub ramification: Option<u64>,
    /// `ramification^(1/m)`.
    #[serde(rename = "E")]
    pub e: Option<f64>,
    /// Images `v_1, ..., v_j` of infinity under the chains of depth `1..=j`.
    #[serde(serialize_with = "ser_points")]
    pub orbit: Vec<Point>,
}

fn ser_points<S: serde::Serializer>(pts: &[Point], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(pts.iter().map(|p| p.to_string()))
}

pub const DEFAULT_SEARCH_BOUND: usize = 8;

pub fn exceptional_cycle_data(r: &WRat, search_bound: usize) -> ExceptionalCycleData {
    let mut orbit = Vec::new();
    let mut prev = Point::Infinity;
    let mut ram: u64 = 1;
    for j in 1..=search_bound.max(1) {
        let at = prev.shift(-1);
        ram *= ramification_at(r, &at) as u64;
        let v = r.eval_point(&at);
        orbit.push(v.clone());
        if v == Point::Infinity {
            return ExceptionalCycleData {
                m: Some(j),
                ramification: Some(ram),
                e: Some((ram as f64).powf(1.0 / j as f64)),
                orbit,
            };
        }
        prev = v;
    }
    ExceptionalCycleData {
        m: None,
        ramification: None,
        e: None,
        orbit,
    }
}

/// Exact `e`-th root of `n` if it exists.
pub fn exact_root(n: u64, e: u32) -> Option<u64> {
    let r = (n as f64).powf(1.0 / e as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|c| c.checked_pow(e) == Some(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(s: &str) -> WRat {
        s.parse().unwrap()
    }

    #[test]
    fn chain_examples() {
        let c = compose_chain(&map("w^2 + z"), 2);
        assert_eq!(c.value(), &map("(w^2 + z - 1)^2 + z"));
        let c = compose_chain(&map("(w^2+z)/w"), 2);
        assert_eq!(c.value(), &map("((w^2 + z - 1)^2 + z*w^2)/(w*(w^2 + z - 1))"));
        assert!(c.is_lowest_terms());
        let c = compose_chain(&map("(w^2+z)/w"), 0);
        assert_eq!(c.value(), &WRat::w());
    }

    #[test]
    fn forward_chain_shifts() {
        let r = map("w^2 + z");
        let f = compose_chain_forward(&r, 2);
        // R_{z+1}(R_z(w)) = (w^2 + z)^2 + z + 1
        assert_eq!(f.value(), &map("(w^2 + z)^2 + z + 1"));
    }

    #[test]
    fn profile_examples() {
        let r = map("(w^2+z)/w");
        let p1 = multiplicity_profile(&r, 1);
        assert_eq!(p1.factors, vec![("w".parse().unwrap(), 1)]);
        assert_eq!((p1.e0, p1.ek), (1, 1));
        let p2 = multiplicity_profile(&r, 2);
        assert_eq!(
            p2.factors,
            vec![("w".parse().unwrap(), 1), ("w^2 + z - 1".parse().unwrap(), 1)]
        );
        assert_eq!((p2.e0, p2.ek), (1, 1));
        let p = multiplicity_profile(&map("w^2 + z"), 3);
        assert!(p.factors.is_empty());
        assert_eq!((p.e0, p.ek), (8, 8));
    }

    #[test]
    fn spread_examples() {
        let rows = spread_sequence(&map("(w^2+z)/w"), 2).unwrap();
        let ratios: Vec<String> = rows.iter().map(|r| r.ratio.to_string()).collect();
        assert_eq!(ratios, vec!["1/2", "1/4"]);
        assert_eq!(
            spread_sequence(&map("w^2 + z"), 3),
            Err(CompositionError::PolynomialComposite)
        );
        assert_eq!(
            spread_sequence(&map("z/(w-1)^2 + 1"), 3),
            Err(CompositionError::PolynomialComposite)
        );
    }

    #[test]
    fn layers() {
        let q: WPoly = "w^3*(w - 1)".parse().unwrap();
        let l = squarefree_layers(&q);
        let expect: Vec<WPoly> = ["w^2 - w", "w", "w"].iter().map(|s| s.parse().unwrap()).collect();
        assert_eq!(l, expect);
        assert!(squarefree_layers(&WPoly::one()).is_empty());
    }

    #[test]
    fn ramification_examples() {
        let zero = Point::Finite(RatFunc::zero());
        let one = Point::Finite(RatFunc::one());
        assert_eq!(ramification_at(&map("w^2"), &zero), 2);
        assert_eq!(ramification_at(&map("w^2"), &one), 1);
        assert_eq!(ramification_at(&map("(w^2+z)/w"), &Point::Infinity), 1);
    }

    #[test]
    fn cycle_examples() {
        let c = exceptional_cycle_data(&map("w^2 + z"), 8);
        assert_eq!((c.m, c.ramification), (Some(1), Some(2)));
        let c = exceptional_cycle_data(&map("z/(w-1)^2 + 1"), 8);
        assert_eq!((c.m, c.ramification), (Some(2), Some(4)));
        assert_eq!(c.e, Some(2.0));
        let c = exceptional_cycle_data(&map("(w^2+z)/w"), 8);
        assert_eq!((c.m, c.ramification), (Some(1), Some(1)));
    }
}

//! Factorization of squarefree univariate polynomials over Z
//! (Berlekamp–Zassenhaus: factor mod p, Hensel lift, recombine).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::fp::{primes_below, Fp, PolyFp};
use super::intpoly::{self, IntPoly};
use super::modpoly::ModRing;

const PRIME_START: u64 = 1 << 15;
const PRIME_TRIALS: usize = 4;

/// Splits a squarefree polynomial of positive degree into irreducible
/// primitive factors with positive leading coefficients, sorted.
pub fn factor_squarefree<R: Rng>(f: &[BigInt], rng: &mut R) -> Vec<IntPoly> {
    let mut f = intpoly::primitive(f);
    assert!(f.len() >= 2, "factoring a constant");
    let mut out = Vec::new();
    if f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
    }
    if f.len() == 2 {
        out.push(f);
    } else if f.len() > 2 {
        out.extend(zassenhaus(&f, rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Number of irreducible factors of a squarefree polynomial modulo a
/// prime that does not divide the leading coefficient, or `None` if the
/// reduction is not squarefree.
pub fn count_mod_p<R: Rng>(f: &[BigInt], p: u64, rng: &mut R) -> Option<(Fp, Vec<PolyFp>)> {
    let fp = Fp::new(p);
    let red = fp.poly_from_bigints(f);
    if red.len() != f.len() || !fp.is_squarefree(&red) {
        return None;
    }
    let monic = fp.poly_monic(&red);
    let facs = fp.factor_squarefree(&monic, rng);
    Some((fp, facs))
}

fn zassenhaus<R: Rng>(f: &[BigInt], rng: &mut R) -> Vec<IntPoly> {
    let mut best: Option<(Fp, Vec<PolyFp>)> = None;
    let mut tried = 0;
    for p in primes_below(PRIME_START) {
        if p < 3 {
            break;
        }
        let Some(cand) = count_mod_p(f, p, rng) else {
            continue;
        };
        tried += 1;
        if best.as_ref().is_none_or(|b| cand.1.len() < b.1.len()) {
            best = Some(cand);
        }
        if tried >= PRIME_TRIALS || best.as_ref().is_some_and(|b| b.1.len() == 1) {
            break;
        }
    }
    let (fp, facs) = best.expect("a squarefree polynomial has good primes");
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }
    let n = f.len() - 1;
    let lc = f.last().unwrap().abs();
    let bound: BigInt = &lc * (BigInt::one() << n) * intpoly::norm2_ceil(f);
    let target = bound * 2 + 1;
    let (modulus, lifted) = hensel_lift(f, fp, &facs, &target);
    recombine(f, &modulus, lifted)
}

/// Lifts `f = lc * prod g_i (mod p)` to `f = lc * prod G_i (mod p^a)` with
/// monic `G_i`, where `p^a > target`.
pub fn hensel_lift(f: &[BigInt], fp: Fp, facs: &[PolyFp], target: &BigInt) -> (BigInt, Vec<IntPoly>) {
    let p = BigInt::from(fp.p);
    let r = facs.len();
    // cofactors s_i with sum s_i * prod_{j != i} g_j = 1 (mod p)
    let cof: Vec<PolyFp> = (0..r)
        .map(|i| {
            let h = facs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(vec![1u64], |acc, (_, g)| fp.poly_mul(&acc, g));
            let (g, s, _) = fp.poly_xgcd(&fp.poly_rem(&h, &facs[i]), &facs[i]);
            debug_assert_eq!(g, vec![1]);
            s
        })
        .collect();
    let mut lifted: Vec<IntPoly> = facs
        .iter()
        .map(|g| g.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut pk = p.clone();
    while &pk <= target {
        let next = &pk * &p;
        let ring = ModRing::new(next.clone());
        let inv_lc = ring.inv(f.last().unwrap()).expect("p does not divide lc");
        let monic_f = ring.scale(f, &inv_lc);
        let prod = lifted
            .iter()
            .skip(1)
            .fold(lifted[0].clone(), |acc, g| ring.mul(&acc, g));
        let err = ring.sub(&monic_f, &prod);
        let c: PolyFp = fp.trim(
            err.iter()
                .map(|e| {
                    let (q, rem) = e.div_rem(&pk);
                    debug_assert!(rem.is_zero());
                    fp.from_bigint(&q)
                })
                .collect(),
        );
        if !c.is_empty() {
            for i in 0..r {
                let delta = fp.poly_rem(&fp.poly_mul(&c, &cof[i]), &facs[i]);
                let mut g = std::mem::take(&mut lifted[i]);
                if g.len() < delta.len() {
                    g.resize(delta.len(), BigInt::zero());
                }
                for (gj, &dj) in g.iter_mut().zip(&delta) {
                    *gj += &pk * dj;
                }
                lifted[i] = g;
            }
        }
        pk = next;
    }
    (pk, lifted)
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut idx: Vec<usize> = (0..k).collect();
    let mut first = true;
    std::iter::from_fn(move || {
        if k > n {
            return None;
        }
        if first {
            first = false;
            return Some(idx.clone());
        }
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] != i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                return Some(idx.clone());
            }
        }
        None
    })
}

fn recombine(f: &[BigInt], modulus: &BigInt, mut lifted: Vec<IntPoly>) -> Vec<IntPoly> {
    let ring = ModRing::new(modulus.clone());
    let mut rest = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in combinations(lifted.len(), size) {
            let lc = rest.last().unwrap().clone();
            let c0 = subset
                .iter()
                .fold(lc.clone(), |acc, &i| ring.reduce(&(acc * &lifted[i][0])));
            let c0 = intpoly::sym_mod(&c0, modulus);
            if c0.is_zero() || !(&lc * &rest[0]).is_multiple_of(&c0) {
                continue;
            }
            let cand = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| ring.mul(&acc, &lifted[i]));
            let cand = intpoly::primitive(&ring.symmetric(&cand));
            if let Some(q) = intpoly::div_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push(intpoly::primitive(&rest));
    out
}

//! Irreducible factorization over Q of bivariate polynomials in Z[z][w].
//!
//! A squarefree primitive input is made monic in `w`, specialized at an
//! integer `z = z0` where it stays squarefree, factored there over Z, and the
//! univariate factors are lifted `(z - z0)`-adically modulo a large prime.
//! True factors are recovered by recombining lifted factors and checking
//! exact division.

use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::bipoly::IntBiPoly;
use super::fp::{primes_below, random_prime, Fp};
use super::gcd;
use super::intpoly::{self, IntPoly};
use super::modpoly::ModRing;
use super::zfactor;

/// Power series in `t` with coefficients in (Z/P)[w], truncated.
type Series = Vec<IntPoly>;

const SPECIALIZATIONS: usize = 3;

/// Irreducible factors of `f` over Q(z), each primitive in Z[z][w] with
/// positive top coefficient, with multiplicities, sorted.
pub fn factor(f: &IntBiPoly) -> Vec<(IntBiPoly, u32)> {
    let mut out = Vec::new();
    for (h, e) in gcd::squarefree(f) {
        for g in factor_squarefree(&h) {
            out.push((g, e));
        }
    }
    out.sort_by(|a, b| cmp_bipoly(&a.0, &b.0).then(a.1.cmp(&b.1)));
    out
}

pub fn cmp_bipoly(a: &IntBiPoly, b: &IntBiPoly) -> std::cmp::Ordering {
    a.deg_w()
        .cmp(&b.deg_w())
        .then(a.deg_z().cmp(&b.deg_z()))
        .then_with(|| a.rows().cmp(b.rows()))
}

/// Irreducible factors of a squarefree `f` with `deg_w f >= 1`.
pub fn factor_squarefree(f: &IntBiPoly) -> Vec<IntBiPoly> {
    let f = f.primitive();
    let n = f.deg_w().expect("nonzero polynomial");
    assert!(n >= 1, "factoring a polynomial constant in w");
    if n == 1 {
        return vec![f];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let lc = f.lc_w().to_vec();
    let monic = to_monic(&f, &lc);

    let Some((z0, uni)) = best_specialization(&monic, &mut rng) else {
        panic!("no squarefree specialization found for a squarefree polynomial");
    };
    if uni.len() == 1 {
        return vec![f];
    }
    let shifted = monic.shift_z(&BigInt::from(z0));
    let found = lift_and_recombine(&shifted, &uni, &mut rng);
    let mut out: Vec<IntBiPoly> = found
        .into_iter()
        .map(|g| {
            let g = g.shift_z(&BigInt::from(-z0));
            if lc.len() == 1 && lc[0].is_one() {
                g.primitive()
            } else {
                g.scale_w(&lc).primitive()
            }
        })
        .collect();
    out.sort_by(cmp_bipoly);
    out
}

/// `lc^(n-1) f(w / lc)`, monic in `w`.
fn to_monic(f: &IntBiPoly, lc: &[BigInt]) -> IntBiPoly {
    if lc.len() == 1 && lc[0].is_one() {
        return f.clone();
    }
    let n = f.deg_w().unwrap();
    let mut rows = vec![Vec::new(); n + 1];
    let mut pow: IntPoly = vec![BigInt::one()];
    for i in (0..n).rev() {
        rows[i] = intpoly::mul(f.row(i), &pow);
        pow = intpoly::mul(&pow, lc);
    }
    rows[n] = vec![BigInt::one()];
    IntBiPoly::from_rows(rows)
}

fn squarefree_image(u: &[BigInt]) -> bool {
    primes_below(1 << 31).take(3).any(|p| {
        let fp = Fp::new(p);
        let r = fp.poly_from_bigints(u);
        r.len() == u.len() && fp.is_squarefree(&r)
    })
}

fn best_specialization(monic: &IntBiPoly, rng: &mut ChaCha8Rng) -> Option<(i64, Vec<IntPoly>)> {
    let mut best: Option<(i64, Vec<IntPoly>)> = None;
    let mut found = 0;
    for k in 0..200i64 {
        let z0 = if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 };
        let u = monic.eval_z(&BigInt::from(z0));
        if !squarefree_image(&u) {
            continue;
        }
        let facs = zfactor::factor_squarefree(&u, rng);
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((z0, facs));
        }
        found += 1;
        if found >= SPECIALIZATIONS || best.as_ref().is_some_and(|b| b.1.len() == 1) {
            break;
        }
    }
    best
}

fn transpose_to_series(f: &IntBiPoly, len: usize) -> Series {
    let mut s: Series = vec![Vec::new(); len];
    for (i, row) in f.rows().iter().enumerate() {
        for (j, c) in row.iter().enumerate().take(len) {
            if s[j].len() <= i {
                s[j].resize(i + 1, BigInt::default());
            }
            s[j][i] = c.clone();
        }
    }
    s.into_iter().map(intpoly::trim).collect()
}

fn series_to_bipoly(ring: &ModRing, s: &Series) -> IntBiPoly {
    let n = s.iter().map(|c| c.len()).max().unwrap_or(0);
    let rows = (0..n)
        .map(|i| {
            s.iter()
                .map(|c| intpoly::sym_mod(c.get(i).unwrap_or(&BigInt::default()), &ring.m))
                .collect()
        })
        .collect();
    IntBiPoly::from_rows(rows)
}

fn series_mul(ring: &ModRing, a: &Series, b: &Series, len: usize) -> Series {
    let mut out: Series = vec![Vec::new(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_empty() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_empty() {
                out[i + j] = intpoly::add(&out[i + j], &intpoly::mul(x, y));
            }
        }
    }
    out.iter().map(|c| ring.poly(c)).collect()
}

/// Lifts `f = A B` from `f(0) = a0 b0` with `A`, `B` monic in `w`.
fn lift_two(ring: &ModRing, f: &Series, a0: &IntPoly, b0: &IntPoly) -> Option<(Series, Series)> {
    let (g, _s, t) = ring.xgcd(a0, b0);
    if g != vec![BigInt::one()] {
        return None;
    }
    let len = f.len();
    let mut a: Series = vec![a0.clone()];
    let mut b: Series = vec![b0.clone()];
    for j in 1..len {
        let mut e = f[j].clone();
        for k in 1..j {
            if !a[k].is_empty() && !b[j - k].is_empty() {
                e = intpoly::sub(&e, &intpoly::mul(&a[k], &b[j - k]));
            }
        }
        let e = ring.poly(&e);
        let aj = ring.rem(&ring.mul(&e, &t), a0);
        let (bj, r) = ring.divrem(&ring.sub(&e, &ring.mul(&aj, b0)), a0);
        debug_assert!(r.is_empty());
        a.push(aj);
        b.push(bj);
    }
    Some((a, b))
}

fn lift_tree(ring: &ModRing, f: &Series, facs: &[IntPoly]) -> Option<Vec<Series>> {
    if facs.len() == 1 {
        return Some(vec![f.clone()]);
    }
    let (l, r) = facs.split_at(facs.len() / 2);
    let prod = |fs: &[IntPoly]| fs.iter().skip(1).fold(ring.poly(&fs[0]), |acc, g| ring.mul(&acc, g));
    let (a, b) = lift_two(ring, f, &prod(l), &prod(r))?;
    let mut out = lift_tree(ring, &a, l)?;
    out.extend(lift_tree(ring, &b, r)?);
    Some(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn lift_and_recombine(f: &IntBiPoly, uni: &[IntPoly], rng: &mut ChaCha8Rng) -> Vec<IntBiPoly> {
    let n = f.deg_w().unwrap();
    let dt = f.deg_z();
    let bound: BigInt = (BigInt::one() << (n + dt)) * f.norm2_ceil();
    let bits = (bound * BigInt::from(4)).bits() + 2;
    let len = dt + 1;
    let (ring, lifted) = loop {
        let ring = ModRing::new(random_prime(bits, rng));
        let series = transpose_to_series(f, len);
        let series: Series = series.iter().map(|c| ring.poly(c)).collect();
        if let Some(l) = lift_tree(&ring, &series, uni) {
            break (ring, l);
        }
    };

    let mut rest = f.clone();
    let mut pool = lifted;
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= pool.len() {
        for subset in combinations(pool.len(), size) {
            let cand = subset.iter().skip(1).fold(pool[subset[0]].clone(), |acc: Series, &i| {
                series_mul(&ring, &acc, &pool[i], len)
            });
            let cand = series_to_bipoly(&ring, &cand);
            if cand.deg_z() > rest.deg_z() {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                out.push(cand);
                rest = q;
                for &i in subset.iter().rev() {
                    pool.remove(i);
                }
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bp(terms: &[(usize, usize, i64)]) -> IntBiPoly {
        IntBiPoly::from_terms(terms)
    }

    #[test]
    fn irreducible_examples() {
        // w^2 + z is irreducible over Q(z)
        let f = bp(&[(2, 0, 1), (0, 1, 1)]);
        assert_eq!(factor_squarefree(&f), vec![f.clone()]);
        // w^2 - z^2 = (w - z)(w + z)
        let g = bp(&[(2, 0, 1), (0, 2, -1)]);
        let facs = factor_squarefree(&g);
        assert_eq!(facs, vec![bp(&[(1, 0, 1), (0, 1, -1)]), bp(&[(1, 0, 1), (0, 1, 1)])]);
    }

    #[test]
    fn non_monic_product() {
        // (z w + 1)(w^2 - z)(2 w - z^2 + 3)
        let a = bp(&[(1, 1, 1), (0, 0, 1)]);
        let b = bp(&[(2, 0, 1), (0, 1, -1)]);
        let c = bp(&[(1, 0, 2), (0, 2, -1), (0, 0, 3)]);
        let f = a.mul(&b).mul(&c);
        let facs = factor_squarefree(&f);
        assert_eq!(facs.len(), 3);
        let prod = facs.iter().fold(IntBiPoly::one(), |acc, g| acc.mul(g));
        assert_eq!(prod.primitive(), f.primitive());
    }

    #[test]
    fn with_multiplicities() {
        // w^3 (w - 1)
        let f = bp(&[(4, 0, 1), (3, 0, -1)]);
        let facs = factor(&f);
        assert_eq!(facs, vec![(bp(&[(1, 0, 1)]), 3), (bp(&[(1, 0, 1), (0, 0, -1)]), 1)]);
    }
}

//! Gcds and squarefree decomposition in Z[z][w], viewed in Q(z)[w].
//!
//! The gcd is computed with a dense modular algorithm: images at points
//! `z = a` modulo word primes, interpolation in `z`, Chinese remaindering
//! and a trial-division check. A primitive remainder sequence is kept as a
//! fallback and as a reference for tests.

use num_bigint::BigInt;

use super::bipoly::IntBiPoly;
use super::fp::{primes_below, Fp, PolyFp};
use super::intpoly;

const PRIME_START: u64 = 1 << 31;
const MAX_PRIMES: usize = 400;

/// Primitive gcd over Q(z) (content in Z[z] removed, positive top coefficient).
///
/// Returns `1` when the inputs are coprime in Q(z)[w].
pub fn gcd(f: &IntBiPoly, g: &IntBiPoly) -> IntBiPoly {
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    let f = f.primitive();
    let g = g.primitive();
    if f.deg_w() == Some(0) || g.deg_w() == Some(0) {
        return IntBiPoly::one();
    }
    if f == g {
        return f;
    }
    modular_gcd(&f, &g).unwrap_or_else(|| prs_gcd(&f, &g))
}

/// Gcd by primitive pseudo-remainder sequences.
pub fn prs_gcd(f: &IntBiPoly, g: &IntBiPoly) -> IntBiPoly {
    let (mut a, mut b) = (f.primitive(), g.primitive());
    if a.deg_w() < b.deg_w() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.deg_w() == Some(0) {
            return IntBiPoly::one();
        }
        let r = pseudo_rem(&a, &b).primitive();
        a = b;
        b = r;
    }
    a.primitive()
}

fn pseudo_rem(a: &IntBiPoly, b: &IntBiPoly) -> IntBiPoly {
    let db = b.deg_w().expect("nonzero divisor");
    let lb = IntBiPoly::constant(b.lc_w().to_vec());
    let mut r = a.clone();
    while let Some(dr) = r.deg_w() {
        if dr < db {
            break;
        }
        let lr = IntBiPoly::constant(r.lc_w().to_vec());
        r = lb.mul(&r).sub(&lr.mul(&b.shift_w(dr - db)));
    }
    r
}

fn eval_rows(fp: &Fp, rows: &[PolyFp], a: u64) -> PolyFp {
    fp.trim(rows.iter().map(|r| fp.poly_eval(r, a)).collect())
}

/// Newton interpolation through `(xs[k], ys[k])`.
fn interpolate(fp: &Fp, xs: &[u64], ys: &[u64]) -> PolyFp {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = fp.sub(coef[i], coef[i - 1]);
            let den = fp.sub(xs[i], xs[i - j]);
            coef[i] = fp.mul(num, fp.inv(den));
        }
    }
    let mut poly: PolyFp = vec![coef[n - 1]];
    for i in (0..n - 1).rev() {
        // poly = poly * (x - xs[i]) + coef[i]
        let mut next = vec![0u64; poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k + 1] = fp.add(next[k + 1], c);
            next[k] = fp.sub(next[k], fp.mul(c, xs[i]));
        }
        next[0] = fp.add(next[0], coef[i]);
        poly = next;
    }
    fp.trim(poly)
}

enum Image {
    Coprime,
    Grid(usize, Vec<PolyFp>),
    Unlucky,
}

fn image_mod_p(f: &IntBiPoly, g: &IntBiPoly, gamma: &[BigInt], dz: usize, p: u64) -> Image {
    let fp = Fp::new(p);
    let fr = f.reduce_mod(&fp);
    let gr = g.reduce_mod(&fp);
    if fr.last().is_none_or(|r| r.is_empty()) || gr.last().is_none_or(|r| r.is_empty()) {
        return Image::Unlucky;
    }
    let gam = fp.poly_from_bigints(gamma);
    let mut xs = Vec::new();
    let mut vals: Vec<PolyFp> = Vec::new();
    let mut mindeg = usize::MAX;
    let mut a = 0u64;
    let budget = 4 * (dz + 1) + 64;
    while xs.len() < dz + 1 {
        a += 1;
        if a as usize > budget {
            return Image::Unlucky;
        }
        let ga = fp.poly_eval(&gam, a);
        if ga == 0 {
            continue;
        }
        let fa = eval_rows(&fp, &fr, a);
        let gb = eval_rows(&fp, &gr, a);
        if fa.len() != fr.len() || gb.len() != gr.len() {
            continue;
        }
        let h = fp.poly_gcd(&fa, &gb);
        let deg = h.len() - 1;
        if deg == 0 {
            return Image::Coprime;
        }
        if deg < mindeg {
            mindeg = deg;
            xs.clear();
            vals.clear();
        }
        if deg > mindeg {
            continue;
        }
        xs.push(a);
        vals.push(fp.poly_scale(&h, ga));
    }
    let grid = (0..=mindeg)
        .map(|i| {
            let ys: Vec<u64> = vals.iter().map(|v| v.get(i).copied().unwrap_or(0)).collect();
            interpolate(&fp, &xs, &ys)
        })
        .collect();
    Image::Grid(mindeg, grid)
}

fn modular_gcd(f: &IntBiPoly, g: &IntBiPoly) -> Option<IntBiPoly> {
    let gamma = intpoly::gcd(f.lc_w(), g.lc_w());
    let dz = gamma.len() - 1 + f.deg_z().min(g.deg_z());
    let mut acc: Option<(BigInt, usize, Vec<Vec<BigInt>>)> = None;
    let mut last: Option<IntBiPoly> = None;
    for p in primes_below(PRIME_START).take(MAX_PRIMES) {
        let (deg, grid) = match image_mod_p(f, g, &gamma, dz, p) {
            Image::Coprime => return Some(IntBiPoly::one()),
            Image::Unlucky => continue,
            Image::Grid(d, grid) => (d, grid),
        };
        let pb = BigInt::from(p);
        let lift = |grid: &[PolyFp]| -> Vec<Vec<BigInt>> {
            grid.iter()
                .map(|r| (0..=dz).map(|j| BigInt::from(r.get(j).copied().unwrap_or(0))).collect())
                .collect()
        };
        acc = match acc.take() {
            Some((m, d, cur)) if d == deg => {
                let fpp = Fp::new(p);
                let minv = fpp.inv(fpp.from_bigint(&m));
                let next: Vec<Vec<BigInt>> = cur
                    .iter()
                    .zip(&grid)
                    .map(|(row, img)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, x)| {
                                let b = img.get(j).copied().unwrap_or(0);
                                let t = fpp.mul(fpp.sub(b, fpp.from_bigint(x)), minv);
                                x + &m * BigInt::from(t)
                            })
                            .collect()
                    })
                    .collect();
                Some((&m * &pb, d, next))
            }
            Some((m, d, cur)) if d < deg => Some((m, d, cur)),
            _ => Some((pb.clone(), deg, lift(&grid))),
        };
        let (m, _, cur) = acc.as_ref().unwrap();
        let sym = IntBiPoly::from_rows(
            cur.iter()
                .map(|r| r.iter().map(|x| intpoly::sym_mod(x, m)).collect())
                .collect(),
        )
        .primitive();
        if last.as_ref() == Some(&sym) && f.div_exact(&sym).is_some() && g.div_exact(&sym).is_some() {
            return Some(sym);
        }
        last = Some(sym);
    }
    None
}

/// Squarefree decomposition `f = c * prod h_i^i` over Q(z) (Yun's algorithm).
///
/// Returns the pairs `(h_i, i)` with `deg_w h_i > 0`, each `h_i` primitive.
pub fn squarefree(f: &IntBiPoly) -> Vec<(IntBiPoly, u32)> {
    let f = f.primitive();
    if f.deg_w().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = f.derivative_w();
    let a0 = gcd(&f, &df);
    let mut b = f.div_exact(&a0).expect("gcd divides f");
    let c = df.div_exact(&a0).expect("gcd divides f'");
    let mut d = c.sub(&b.derivative_w());
    let mut out = Vec::new();
    let mut i = 1;
    while b.deg_w().unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        if a.deg_w().unwrap_or(0) > 0 {
            out.push((a.clone(), i));
        }
        let nb = b.div_exact(&a).expect("gcd divides");
        let nc = d.div_exact(&a).expect("gcd divides");
        d = nc.sub(&nb.derivative_w());
        b = nb;
        i += 1;
    }
    out
}

/// Checks that `f` and `g` are coprime in Q(z)[w] by a single modular image
/// at a point where neither leading coefficient vanishes.
///
/// `true` is a proof of coprimality; `false` means no certificate was found.
pub fn coprime_certificate(f: &IntBiPoly, g: &IntBiPoly) -> bool {
    if f.is_zero() || g.is_zero() {
        return false;
    }
    if f.deg_w() == Some(0) || g.deg_w() == Some(0) {
        return true;
    }
    for p in primes_below(PRIME_START).take(8) {
        let fp = Fp::new(p);
        let fr = f.reduce_mod(&fp);
        let gr = g.reduce_mod(&fp);
        for a in 1..64u64 {
            let fa = eval_rows(&fp, &fr, a);
            let ga = eval_rows(&fp, &gr, a);
            if fa.len() != fr.len() || ga.len() != gr.len() {
                continue;
            }
            return fp.poly_gcd(&fa, &ga).len() == 1;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb(max_w: usize, max_z: usize) -> impl Strategy<Value = IntBiPoly> {
        prop::collection::vec(prop::collection::vec(-9i64..9, 0..=max_z), 1..=max_w)
            .prop_map(|rows| IntBiPoly::from_rows(rows.iter().map(|r| intpoly::from_i64s(r)).collect()))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn modular_matches_prs(a in arb(4, 3), b in arb(4, 3), c in arb(3, 2)) {
            prop_assume!(!a.is_zero() && !b.is_zero() && c.deg_w().unwrap_or(0) > 0);
            let f = a.mul(&c);
            let g = b.mul(&c);
            let h = gcd(&f, &g);
            prop_assert_eq!(&h, &prs_gcd(&f, &g));
            prop_assert!(f.div_exact(&h).is_some());
            prop_assert!(h.deg_w() >= c.primitive().deg_w());
        }
    }

    #[test]
    fn squarefree_example() {
        // (w - z)^2 (w + 1)
        let a = IntBiPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]);
        let b = IntBiPoly::from_terms(&[(1, 0, 1), (0, 0, 1)]);
        let f = a.mul(&a).mul(&b);
        let sf = squarefree(&f);
        assert_eq!(sf, vec![(b.clone(), 1), (a.clone(), 2)]);
        assert!(coprime_certificate(&a, &b));
        assert!(!coprime_certificate(&f, &a));
    }
}

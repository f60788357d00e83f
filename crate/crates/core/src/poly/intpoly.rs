//! Dense univariate polynomials over Z as ascending, trimmed `Vec<BigInt>`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::{primes_below, Fp};
use crate::exact::{Rational, ZPoly};

pub type IntPoly = Vec<BigInt>;

pub fn trim(mut a: IntPoly) -> IntPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn degree(a: &[BigInt]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn from_i64s(c: &[i64]) -> IntPoly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, c) in out.iter_mut().zip(short) {
        *o += c;
    }
    trim(out)
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, c) in out.iter_mut().zip(b) {
        *o -= c;
    }
    trim(out)
}

pub fn neg(a: &[BigInt]) -> IntPoly {
    a.iter().map(|c| -c).collect()
}

pub fn scale(a: &[BigInt], c: &BigInt) -> IntPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn max_bits(a: &[BigInt]) -> u64 {
    a.iter().map(|c| c.bits()).max().unwrap_or(0)
}

pub fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) >= 24 && a.len() * b.len() >= 1500 {
        return kronecker_mul(a, b);
    }
    schoolbook_mul(a, b)
}

pub fn schoolbook_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn pack(a: &[BigInt], sign: Sign, words: usize) -> BigUint {
    let mut digits = vec![0u32; a.len() * words];
    for (k, c) in a.iter().enumerate() {
        if c.sign() == sign {
            let d = c.magnitude().to_u32_digits();
            digits[k * words..k * words + d.len()].copy_from_slice(&d);
        }
    }
    BigUint::new(digits)
}

fn unpack(v: &BigUint, len: usize, words: usize) -> Vec<BigUint> {
    let digits = v.to_u32_digits();
    (0..len)
        .map(|k| {
            let lo = (k * words).min(digits.len());
            let hi = ((k + 1) * words).min(digits.len());
            BigUint::new(digits[lo..hi].to_vec())
        })
        .collect()
}

/// Product by Kronecker substitution into a single big-integer product.
///
/// Signs are handled by splitting both operands into nonnegative parts, so
/// every slot of every intermediate product is nonnegative and carry-free.
pub fn kronecker_mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let terms = a.len().min(b.len()) as u64;
    let slot_bits = max_bits(a) + max_bits(b) + (64 - terms.leading_zeros() as u64) + 2;
    let words = slot_bits.div_ceil(32) as usize;
    let ap = pack(a, Sign::Plus, words);
    let an = pack(a, Sign::Minus, words);
    let bp = pack(b, Sign::Plus, words);
    let bn = pack(b, Sign::Minus, words);
    let all = (&ap + &an) * (&bp + &bn);
    let pos = &ap * &bp + &an * &bn;
    let negs = all - &pos;
    let len = a.len() + b.len() - 1;
    let p = unpack(&pos, len, words);
    let n = unpack(&negs, len, words);
    trim(
        p.into_iter()
            .zip(n)
            .map(|(x, y)| BigInt::from(x) - BigInt::from(y))
            .collect(),
    )
}

/// Nonnegative gcd of the coefficients.
pub fn content(a: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> IntPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let mut g = content(a);
    if a.last().unwrap().is_negative() {
        g = -g;
    }
    if g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|c| c / &g).collect()
}

fn normalize_sign(a: &[BigInt]) -> IntPoly {
    if a.last().is_some_and(|c| c.is_negative()) {
        neg(a)
    } else {
        a.to_vec()
    }
}

pub fn eval(a: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

pub fn derivative(a: &[BigInt]) -> IntPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
}

/// `a(x + n)`.
pub fn shift(a: &[BigInt], n: &BigInt) -> IntPoly {
    if n.is_zero() || a.len() <= 1 {
        return a.to_vec();
    }
    let mut out: Vec<BigInt> = a.to_vec();
    let len = out.len();
    // repeated synthetic division (Horner's Taylor shift)
    for i in 0..len {
        for j in (i..len - 1).rev() {
            let t = &out[j + 1] * n;
            out[j] += t;
        }
    }
    trim(out)
}

/// `a / b` over Z, or `None` if `b` does not divide `a` in Z[x].
pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lb = b.last().unwrap();
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let top = &r[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| trim(q))
}

/// Symmetric residue in `(-m/2, m/2]`.
pub fn sym_mod(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// `ceil(||a||_2)`.
pub fn norm2_ceil(a: &[BigInt]) -> BigInt {
    let s: BigInt = a.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r < s {
        r + 1
    } else {
        r
    }
}

pub fn to_zpoly(a: &[BigInt]) -> ZPoly {
    ZPoly::from_integers(a)
}

/// Clears denominators: `p = ints / den`.
pub fn from_zpoly(p: &ZPoly) -> (IntPoly, BigInt) {
    let (ints, den) = p.to_integer_parts();
    (trim(ints), den)
}

/// Gcd in Z[x] with positive leading coefficient.
pub fn gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() {
        return normalize_sign(b);
    }
    if b.is_empty() {
        return normalize_sign(a);
    }
    let c = content(a).gcd(&content(b));
    if a.len() == 1 || b.len() == 1 {
        return vec![c];
    }
    let (pa, pb) = (primitive(a), primitive(b));
    let g = modular_gcd(&pa, &pb).unwrap_or_else(|| prs_gcd(&pa, &pb));
    scale(&g, &c)
}

/// Primitive remainder sequence over Z.
pub fn prs_gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = primitive(&pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let top = r.last().unwrap().clone();
        let k = r.len() - b.len();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &top * bj;
        }
        r = trim(r);
    }
    r
}

/// Small-primes gcd of primitive polynomials with a trial-division check.
fn modular_gcd(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    let gamma = a.last().unwrap().gcd(b.last().unwrap());
    let mut acc: Option<(BigInt, usize, IntPoly)> = None;
    let mut last: Option<IntPoly> = None;
    for p in primes_below(1 << 31).take(400) {
        let fp = Fp::new(p);
        let gp = fp.from_bigint(&gamma);
        if gp == 0 {
            continue;
        }
        let g = fp.poly_gcd(&fp.poly_from_bigints(a), &fp.poly_from_bigints(b));
        if g.len() == 1 {
            return Some(vec![BigInt::one()]);
        }
        let g = fp.poly_scale(&g, gp);
        let deg = g.len() - 1;
        let pb = BigInt::from(p);
        acc = match acc.take() {
            Some((m, d, cur)) if d == deg => {
                let minv = fp.inv(fp.from_bigint(&m));
                let next = cur
                    .iter()
                    .zip(&g)
                    .map(|(x, &img)| {
                        let t = fp.mul(fp.sub(img, fp.from_bigint(x)), minv);
                        x + &m * BigInt::from(t)
                    })
                    .collect();
                Some((&m * &pb, d, next))
            }
            Some((m, d, cur)) if d < deg => Some((m, d, cur)),
            _ => Some((pb, deg, g.iter().map(|&x| BigInt::from(x)).collect())),
        };
        let (m, _, cur) = acc.as_ref().unwrap();
        let sym = primitive(&cur.iter().map(|x| sym_mod(x, m)).collect::<Vec<_>>());
        if last.as_ref() == Some(&sym) && div_exact(a, &sym).is_some() && div_exact(b, &sym).is_some() {
            return Some(sym);
        }
        last = Some(sym);
    }
    None
}

pub fn rational_coeffs(a: &[BigInt]) -> Vec<Rational> {
    a.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

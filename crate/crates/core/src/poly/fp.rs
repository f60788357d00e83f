//! Word-sized prime fields and dense polynomials over them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

/// Polynomial over F_p, ascending, trimmed (the zero polynomial is empty).
pub type PolyFp = Vec<u64>;

/// Arithmetic modulo a prime `p < 2^63`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime_u64(p));
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64);
        r as u64
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        let r = a.mod_floor(&m);
        r.to_u64().expect("reduced residue fits")
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn to_signed(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    // ---- polynomials ----

    pub fn trim(&self, mut a: PolyFp) -> PolyFp {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn poly_from_bigints(&self, c: &[BigInt]) -> PolyFp {
        self.trim(c.iter().map(|x| self.from_bigint(x)).collect())
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> PolyFp {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        self.trim(out)
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> PolyFp {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        self.trim(out)
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> PolyFp {
        if c == 0 {
            return Vec::new();
        }
        a.iter().map(|&x| self.mul(x, c)).collect()
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> PolyFp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        // accumulate in u128 and reduce lazily
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        let p = self.p as u128;
        let limit = u128::MAX - p * p;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let slot = &mut acc[i + j];
                *slot += x as u128 * y as u128;
                if *slot >= limit {
                    *slot %= p;
                }
            }
        }
        self.trim(acc.into_iter().map(|v| (v % p) as u64).collect())
    }

    pub fn poly_monic(&self, a: &[u64]) -> PolyFp {
        match a.last() {
            None => Vec::new(),
            Some(&lc) if lc == 1 => a.to_vec(),
            Some(&lc) => self.poly_scale(a, self.inv(lc)),
        }
    }

    /// `(quotient, remainder)`; panics on a zero divisor.
    pub fn poly_divrem(&self, a: &[u64], b: &[u64]) -> (PolyFp, PolyFp) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.to_vec();
        let mut q = vec![0u64; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + db], inv);
            if c == 0 {
                continue;
            }
            q[i] = c;
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = self.sub(r[i + j], self.mul(c, bj));
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn poly_rem(&self, a: &[u64], b: &[u64]) -> PolyFp {
        self.poly_divrem(a, b).1
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> PolyFp {
        let mut a = self.trim(a.to_vec());
        let mut b = self.trim(b.to_vec());
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn poly_xgcd(&self, a: &[u64], b: &[u64]) -> (PolyFp, PolyFp, PolyFp) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.poly_divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(&lc) => {
                let inv = self.inv(lc);
                (
                    self.poly_scale(&r0, inv),
                    self.poly_scale(&s0, inv),
                    self.poly_scale(&t0, inv),
                )
            }
        }
    }

    pub fn poly_derivative(&self, a: &[u64]) -> PolyFp {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, i as u64 % self.p))
            .collect();
        self.trim(out)
    }

    pub fn poly_eval(&self, a: &[u64], x: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// `base^e mod m`.
    pub fn poly_powmod(&self, base: &[u64], mut e: u128, m: &[u64]) -> PolyFp {
        let mut acc = vec![1u64];
        let mut b = self.poly_rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.poly_rem(&self.poly_mul(&b, &b), m);
            }
        }
        self.poly_rem(&acc, m)
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        let d = self.poly_derivative(f);
        if d.is_empty() {
            return f.len() <= 1;
        }
        self.poly_gcd(f, &d).len() == 1
    }

    /// Factors a monic squarefree polynomial into monic irreducibles
    /// (distinct-degree then Cantor–Zassenhaus equal-degree splitting).
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<PolyFp> {
        debug_assert_eq!(f.last(), Some(&1));
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort();
        out
    }

    fn distinct_degree(&self, f: &[u64]) -> Vec<(PolyFp, usize)> {
        let mut out = Vec::new();
        let mut rest = f.to_vec();
        let x = vec![0u64, 1];
        let mut h = x.clone();
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                out.push((rest.clone(), rest.len() - 1));
                break;
            }
            h = self.poly_powmod(&h, self.p as u128, &rest);
            let g = self.poly_gcd(&rest, &self.poly_sub(&h, &x));
            if g.len() > 1 {
                rest = self.poly_divrem(&rest, &g).0;
                h = self.poly_rem(&h, &rest);
                out.push((g, d));
            }
        }
        out
    }

    fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R, out: &mut Vec<PolyFp>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        if n == 0 {
            return;
        }
        loop {
            let a: PolyFp = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() <= 1 {
                continue;
            }
            let g = if self.p == 2 {
                // trace map for characteristic 2
                let mut t = a.clone();
                let mut s = a.clone();
                for _ in 1..d {
                    t = self.poly_rem(&self.poly_mul(&t, &t), f);
                    s = self.poly_add(&s, &t);
                }
                self.poly_gcd(f, &s)
            } else {
                // a^((p^d - 1)/2) = (a * a^p * ... * a^(p^(d-1)))^((p-1)/2)
                let mut t = a.clone();
                let mut norm = a.clone();
                for _ in 1..d {
                    t = self.poly_powmod(&t, self.p as u128, f);
                    norm = self.poly_rem(&self.poly_mul(&norm, &t), f);
                }
                let b = self.poly_powmod(&norm, (self.p as u128 - 1) / 2, f);
                self.poly_gcd(f, &self.poly_sub(&b, &[1]))
            };
            if g.len() > 1 && g.len() < f.len() {
                let h = self.poly_divrem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.poly_monic(&h), d, rng, out);
                return;
            }
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let f = Fp { p: n };
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes strictly below `start`, descending.
pub fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    let mut n = start;
    std::iter::from_fn(move || {
        while n > 2 {
            n -= 1;
            if is_prime_u64(n) {
                return Some(n);
            }
        }
        None
    })
}

/// Miller–Rabin with random bases for big integers.
pub fn is_probable_prime<R: Rng>(n: &BigInt, rounds: usize, rng: &mut R) -> bool {
    use num_traits::{One, Zero};
    let one = BigInt::one();
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigInt::from(p);
        if n == &bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    let nm1 = n - &one;
    let mut d = nm1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    let bits = n.bits();
    'outer: for _ in 0..rounds {
        let a = random_below(rng, n, bits).max(two.clone());
        let mut x = a.modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn random_below<R: Rng>(rng: &mut R, n: &BigInt, bits: u64) -> BigInt {
    let words = bits.div_ceil(32) as usize;
    let digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
    let v = BigInt::from_slice(num_bigint::Sign::Plus, &digits);
    v.mod_floor(n).abs()
}

/// A random prime with exactly `bits` bits.
pub fn random_prime<R: Rng>(bits: u64, rng: &mut R) -> BigInt {
    use num_traits::One;
    let bits = bits.max(8);
    loop {
        let words = bits.div_ceil(32) as usize;
        let digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
        let mut v = BigInt::from_slice(num_bigint::Sign::Plus, &digits);
        v &= (BigInt::one() << bits) - 1;
        v |= BigInt::one() << (bits - 1);
        v |= BigInt::one();
        if is_probable_prime(&v, 24, rng) {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_primes() {
        assert!(is_prime_u64(2147483647));
        assert!(!is_prime_u64(2147483649));
        let ps: Vec<u64> = primes_below(20).collect();
        assert_eq!(ps, vec![19, 17, 13, 11, 7, 5, 3, 2]);
    }

    #[test]
    fn factor_mod_p_reassembles() {
        let f = Fp::new(101);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        // (x^2+1)(x-3)(x^3+x+1) mod 101, all distinct
        let a = f.poly_mul(&[1, 0, 1], &[f.from_i64(-3), 1]);
        let poly = f.poly_mul(&a, &[1, 1, 0, 1]);
        assert!(f.is_squarefree(&poly));
        let facs = f.factor_squarefree(&poly, &mut rng);
        let prod = facs.iter().fold(vec![1u64], |acc, g| f.poly_mul(&acc, g));
        assert_eq!(prod, poly);
        for g in &facs {
            // irreducible factors have no roots unless linear
            if g.len() > 2 {
                assert!((0..101).all(|x| f.poly_eval(g, x) != 0));
            }
        }
    }

    #[test]
    fn big_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = random_prime(80, &mut rng);
        assert_eq!(p.bits(), 80);
        assert!(is_probable_prime(&BigInt::from(2147483647u64), 10, &mut rng));
        assert!(!is_probable_prime(&BigInt::from(2147483649u64), 10, &mut rng));
    }
}

//! Polynomials over Z/mZ for a big modulus, used by Hensel lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::intpoly::{self, IntPoly};

#[derive(Clone, Debug)]
pub struct ModRing {
    pub m: BigInt,
}

impl ModRing {
    pub fn new(m: BigInt) -> Self {
        ModRing { m }
    }

    pub fn reduce(&self, c: &BigInt) -> BigInt {
        c.mod_floor(&self.m)
    }

    pub fn poly(&self, a: &[BigInt]) -> IntPoly {
        intpoly::trim(a.iter().map(|c| self.reduce(c)).collect())
    }

    /// Inverse of `c`, or `None` if it is not a unit.
    pub fn inv(&self, c: &BigInt) -> Option<BigInt> {
        let e = self.reduce(c).extended_gcd(&self.m);
        e.gcd.is_one().then(|| self.reduce(&e.x))
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> IntPoly {
        self.poly(&intpoly::add(a, b))
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> IntPoly {
        self.poly(&intpoly::sub(a, b))
    }

    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> IntPoly {
        self.poly(&intpoly::mul(a, b))
    }

    pub fn scale(&self, a: &[BigInt], c: &BigInt) -> IntPoly {
        self.poly(&intpoly::scale(a, c))
    }

    pub fn monic(&self, a: &[BigInt]) -> Option<IntPoly> {
        let inv = self.inv(a.last()?)?;
        Some(self.scale(a, &inv))
    }

    /// Division with remainder; the divisor's leading coefficient must be a unit.
    pub fn divrem(&self, a: &[BigInt], b: &[BigInt]) -> (IntPoly, IntPoly) {
        let lb = b.last().expect("nonzero divisor");
        let inv = self.inv(lb).expect("unit leading coefficient");
        let mut r = self.poly(a);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + b.len() - 1];
            if top.is_zero() {
                continue;
            }
            let c = self.reduce(&(top * &inv));
            for (j, bj) in b.iter().enumerate() {
                r[k + j] = self.reduce(&(&r[k + j] - &c * bj));
            }
            q[k] = c;
        }
        (intpoly::trim(q), intpoly::trim(r))
    }

    pub fn rem(&self, a: &[BigInt], b: &[BigInt]) -> IntPoly {
        self.divrem(a, b).1
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic; requires a prime modulus.
    pub fn xgcd(&self, a: &[BigInt], b: &[BigInt]) -> (IntPoly, IntPoly, IntPoly) {
        let (mut r0, mut r1) = (self.poly(a), self.poly(b));
        let (mut s0, mut s1) = (vec![BigInt::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![BigInt::one()]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            let t = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.inv(lc).expect("prime modulus");
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    /// Symmetric representatives.
    pub fn symmetric(&self, a: &[BigInt]) -> IntPoly {
        intpoly::trim(a.iter().map(|c| intpoly::sym_mod(c, &self.m)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_identity() {
        let r = ModRing::new(BigInt::from(1_000_000_007u64));
        let a = intpoly::from_i64s(&[1, 0, 1]);
        let b = intpoly::from_i64s(&[-3, 1]);
        let (g, s, t) = r.xgcd(&a, &b);
        assert_eq!(g, vec![BigInt::one()]);
        let lhs = r.add(&r.mul(&s, &a), &r.mul(&t, &b));
        assert_eq!(lhs, vec![BigInt::one()]);
    }
}

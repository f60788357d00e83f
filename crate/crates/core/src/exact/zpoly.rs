//! Dense univariate polynomials over Q in the coefficient variable `z`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Rational};

/// A polynomial in `z` with rational coefficients, stored ascending.
///
/// The highest stored coefficient is always nonzero; the zero polynomial has
/// no coefficients and reports `None` for its degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct ZPoly {
    coeffs: Vec<Rational>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        ZPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    /// Builds a polynomial from ascending coefficients, trimming zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// `c * z^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        ZPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ZPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Returns `p(z + n)` via an in-place Taylor shift.
    pub fn shift(&self, n: i64) -> Self {
        if n == 0 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let step = Rational::from_integer(BigInt::from(n));
        let mut c = self.coeffs.clone();
        let deg = c.len() - 1;
        for i in 0..deg {
            for j in (i..deg).rev() {
                let t = &c[j + 1] * &step;
                c[j] += t;
            }
        }
        ZPoly { coeffs: c }
    }

    /// Polynomial long division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &ZPoly) -> (ZPoly, ZPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let Some(nd) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if nd < dd {
            return (Self::zero(), self.clone());
        }
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let q = &rem[i + dd] * &lc_inv;
            if q.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &q * d;
                rem[i + j] -= t;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::from_coeffs(quot), Self::from_coeffs(rem))
    }

    /// Quotient of an exact division; `None` when the remainder is nonzero.
    pub fn exact_div(&self, divisor: &ZPoly) -> Option<ZPoly> {
        if divisor.is_one() {
            return Some(self.clone());
        }
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Self::one();
        }
        let (a, _) = self.to_integer_parts();
        let (b, _) = other.to_integer_parts();
        ZPoly::from_integers(&crate::poly::intpoly::gcd(&a, &b)).monic()
    }

    /// Multiplicity of `beta` as a root.
    pub fn root_multiplicity(&self, beta: &Rational) -> u32 {
        if self.is_zero() {
            return 0;
        }
        let mut count = 0;
        let mut cur = self.coeffs.clone();
        loop {
            // synthetic division by (z - beta)
            let n = cur.len();
            if n <= 1 {
                return count;
            }
            let mut q = vec![Rational::zero(); n - 1];
            let mut acc = Rational::zero();
            for i in (0..n).rev() {
                acc = acc * beta + &cur[i];
                if i > 0 {
                    q[i - 1] = acc.clone();
                }
            }
            if !acc.is_zero() {
                return count;
            }
            count += 1;
            cur = q;
        }
    }

    /// Integer primitive part with positive leading coefficient, as a rational polynomial.
    pub fn primitive_integer(&self) -> ZPoly {
        if self.is_zero() {
            return Self::zero();
        }
        let (ints, _) = self.to_integer_parts();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let sign_neg = ints.last().is_some_and(|c| c.is_negative());
        let coeffs = ints
            .into_iter()
            .map(|c| {
                let q = &c / &g;
                Rational::from_integer(if sign_neg { -q } else { q })
            })
            .collect();
        ZPoly { coeffs }
    }

    /// Writes `self = ints / den` with integer `ints` and positive integer `den`.
    pub fn to_integer_parts(&self) -> (Vec<BigInt>, BigInt) {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let ints = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        (ints, den)
    }

    pub fn from_integers(ints: &[BigInt]) -> ZPoly {
        ZPoly::from_coeffs(ints.iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn pow(&self, mut e: u32) -> ZPoly {
        let mut base = self.clone();
        let mut acc = ZPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        ZPoly::from_coeffs(out)
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, rhs: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                (None, None) => unreachable!(),
            });
        }
        ZPoly::from_coeffs(out)
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, rhs: &ZPoly) -> ZPoly {
        if self.is_zero() || rhs.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_coeffs(out)
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ZPoly {
            type Output = ZPoly;
            fn $m(self, rhs: ZPoly) -> ZPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        -&self
    }
}

/// Writes a polynomial in a variable, descending, in the canonical grammar.
fn fmt_poly_in(coeffs: &[Rational], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match k {
            0 => write!(f, "{}", fmt_rational(&abs))?,
            _ => {
                if !abs.is_one() {
                    write!(f, "{}*", fmt_rational(&abs))?;
                }
                if k == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{k}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly_in(&self.coeffs, "z", f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(ZPoly::zero().degree(), None);
        assert_eq!(ZPoly::one().degree(), Some(0));
        assert_eq!(ZPoly::from_ints(&[1, 0, 0]).degree(), Some(0));
    }

    #[test]
    fn division_and_gcd() {
        // (z^2 - 1) / (z - 1)
        let a = ZPoly::from_ints(&[-1, 0, 1]);
        let b = ZPoly::from_ints(&[-1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, ZPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&b), b);
        let c = ZPoly::from_ints(&[2, 3, 1]); // (z+1)(z+2)
        assert_eq!(a.gcd(&c), ZPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn shift_roundtrip() {
        let p = ZPoly::from_ints(&[3, 0, 1]);
        assert_eq!(p.shift(5).shift(-5), p);
        assert_eq!(ZPoly::z().shift(1), ZPoly::from_ints(&[1, 1]));
        assert_eq!(p.shift(2).eval(&rat(1, 1)), p.eval(&rat(3, 1)));
    }

    #[test]
    fn root_multiplicity_counts() {
        let p = &ZPoly::from_ints(&[0, 0, 1]) * &ZPoly::from_ints(&[1, 1]);
        assert_eq!(p.root_multiplicity(&rat(0, 1)), 2);
        assert_eq!(p.root_multiplicity(&rat(-1, 1)), 1);
        assert_eq!(p.root_multiplicity(&rat(1, 2)), 0);
    }

    #[test]
    fn display_is_canonical() {
        let p = ZPoly::from_coeffs(vec![rat(3, 1), rat(-1, 2), rat(1, 1)]);
        assert_eq!(p.to_string(), "z^2 - 1/2*z + 3");
        assert_eq!(ZPoly::from_ints(&[0, -1]).to_string(), "-z");
        assert_eq!(ZPoly::zero().to_string(), "0");
    }
}

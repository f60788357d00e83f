//! The coefficient field Q(z) and its shift automorphism.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::order::LocalOrder;
use super::rational::Rational;
use super::zpoly::ZPoly;
use super::ExactError;

/// An element of Q(z) as a coprime fraction with monic denominator.
///
/// Normalization happens on construction, so structural equality is field
/// equality. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: ZPoly::zero(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(ZPoly::one())
    }

    pub fn z() -> Self {
        Self::from_poly(ZPoly::z())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(ZPoly::from_int(c))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(ZPoly::constant(c))
    }

    pub fn from_poly(p: ZPoly) -> Self {
        RatFunc {
            num: p,
            den: ZPoly::one(),
        }
    }

    /// Reduces `num/den` to lowest terms.
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant in `z` (an element of Q).
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.constant_term())
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if rhs.is_one() {
            return Ok(self.clone());
        }
        Ok(Self::normalize(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    /// `g(z + n)`; the shift is a field automorphism so no renormalization is needed.
    pub fn shift(&self, n: i64) -> Self {
        if n == 0 || self.is_constant() {
            return self.clone();
        }
        RatFunc {
            num: self.num.shift(n),
            den: self.den.shift(n),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Value at a rational point, or `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Order of vanishing at `z = beta`; the zero function has order `+inf`.
    pub fn ord_at(&self, beta: &Rational) -> LocalOrder {
        if self.is_zero() {
            return LocalOrder::Infinity;
        }
        let up = self.num.root_multiplicity(beta) as i64;
        let down = self.den.root_multiplicity(beta) as i64;
        LocalOrder::Finite(up - down)
    }

    /// `max(ord_beta, 0)`.
    pub fn ord_plus_at(&self, beta: &Rational) -> LocalOrder {
        self.ord_at(beta).plus()
    }

    pub fn pow(&self, e: i64) -> Result<Self, ExactError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Total degree used for size heuristics: `max(deg num, deg den)`.
    pub fn height_degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::normalize(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return RatFunc {
                num: &self.num + &(&rhs.num * &self.den),
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            return RatFunc {
                num: &(&self.num * &rhs.den) + &rhs.num,
                den: rhs.den.clone(),
            };
        }
        RatFunc::normalize(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        // cross-cancel before multiplying to keep the gcd work small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = rhs.den.exact_div(&g1).expect("gcd divides");
        let n2 = rhs.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl From<Rational> for RatFunc {
    fn from(c: Rational) -> Self {
        RatFunc::constant(c)
    }
}

impl From<ZPoly> for RatFunc {
    fn from(p: ZPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl serde::Serialize for RatFunc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(ZPoly::from_ints(n), ZPoly::from_ints(d)).unwrap()
    }

    #[test]
    fn normalizes_on_construction() {
        // (z^2 - 1)/(z - 1) = z + 1
        assert_eq!(rf(&[-1, 0, 1], &[-1, 1]), rf(&[1, 1], &[1]));
        // 2z/(4z + 2) = (1/2) z / (z + 1/2)
        let g = rf(&[0, 2], &[2, 4]);
        assert!(g.den().leading().unwrap().is_one());
        assert_eq!(g.den(), &ZPoly::from_coeffs(vec![rat(1, 2), rat(1, 1)]));
        assert!(RatFunc::new(ZPoly::one(), ZPoly::zero()).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let inv_z = rf(&[1], &[0, 1]);
        let other = rf(&[-1, 1], &[0, 1]);
        assert_eq!(&inv_z + &other, RatFunc::one());
        let a = rf(&[0, 1], &[1, 1]);
        let b = rf(&[1, 1], &[0, 1]);
        assert_eq!(&a * &b, RatFunc::one());
        assert_eq!(
            RatFunc::one().checked_div(&RatFunc::zero()),
            Err(ExactError::DivisionByZero)
        );
    }

    #[test]
    fn shift_examples() {
        assert_eq!(RatFunc::z().shift(1), rf(&[1, 1], &[1]));
        assert_eq!(rf(&[1], &[-1, 1]).shift(1), rf(&[1], &[0, 1]));
        let p = rf(&[3, 0, 1], &[1]);
        assert_eq!(p.shift(5).shift(-5), p);
    }

    #[test]
    fn orders() {
        // z^2/(z+1) at 0
        assert_eq!(rf(&[0, 0, 1], &[1, 1]).ord_at(&rat(0, 1)), LocalOrder::Finite(2));
        assert_eq!(rf(&[1], &[-1, 1]).ord_at(&rat(1, 1)), LocalOrder::Finite(-1));
        // 1/z + (-1/z + 1) = 1 has order 0 at 0 despite both summands having order -1
        let f = rf(&[1], &[0, 1]);
        let g = rf(&[-1, 1], &[0, 1]);
        assert_eq!(f.ord_at(&rat(0, 1)), LocalOrder::Finite(-1));
        assert_eq!((&f + &g).ord_at(&rat(0, 1)), LocalOrder::Finite(0));
        assert_eq!(RatFunc::zero().ord_at(&rat(0, 1)), LocalOrder::Infinity);
    }
}

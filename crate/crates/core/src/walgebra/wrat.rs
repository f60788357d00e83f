//! Rational functions in `w` over Q(z), kept in lowest terms.

use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::exact::{ExprField, ParseError, RatFunc};
use crate::poly::gcd;

use super::wpoly::WPoly;
use super::WAlgebraError;

/// A point of P^1 over Q(z).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Point {
    Finite(RatFunc),
    Infinity,
}

impl Point {
    pub fn shift(&self, n: i64) -> Point {
        match self {
            Point::Finite(c) => Point::Finite(c.shift(n)),
            Point::Infinity => Point::Infinity,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Finite(c) => write!(f, "{c}"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

/// `num / den` with `gcd_w(num, den) = 1` and `den` monic in `w`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WRat {
    num: WPoly,
    den: WPoly,
}

impl WRat {
    pub fn new(num: WPoly, den: WPoly) -> Result<Self, WAlgebraError> {
        if den.is_zero() {
            return Err(WAlgebraError::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: WPoly, den: WPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(WPoly::zero());
        }
        if den.is_constant() {
            let inv = den.coeff(0).inv().expect("nonzero denominator");
            return Self::from_poly(num.scale(&inv));
        }
        let (un, pn) = num.to_int();
        let (ud, pd) = den.to_int();
        let g = gcd::gcd(&pn, &pd);
        let (pn, pd) = if g.deg_w() == Some(0) {
            (pn, pd)
        } else {
            (
                pn.div_exact(&g).expect("gcd divides numerator"),
                pd.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::assemble(&un, &pn, &ud, &pd)
    }

    /// `(un * pn) / (ud * pd)` for already coprime integer parts.
    fn assemble(un: &RatFunc, pn: &crate::poly::IntBiPoly, ud: &RatFunc, pd: &crate::poly::IntBiPoly) -> Self {
        let den = WPoly::from_int(pd);
        let lc = den.leading().expect("nonzero").clone();
        let scale_den = (ud * &lc).inv().expect("nonzero");
        let num = WPoly::from_int(pn).scale(&(un * &scale_den));
        let den = den.scale(&lc.inv().expect("nonzero"));
        WRat { num, den }
    }

    /// Builds from integer parts already known to be coprime.
    pub(crate) fn from_coprime_int(pn: &crate::poly::IntBiPoly, pd: &crate::poly::IntBiPoly) -> Self {
        Self::assemble(&RatFunc::one(), pn, &RatFunc::one(), pd)
    }

    pub fn from_poly(p: WPoly) -> Self {
        WRat {
            num: p,
            den: WPoly::one(),
        }
    }

    pub fn w() -> Self {
        Self::from_poly(WPoly::w())
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::from_poly(WPoly::constant(c))
    }

    pub fn num(&self) -> &WPoly {
        &self.num
    }

    pub fn den(&self) -> &WPoly {
        &self.den
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Denominator constant in `w`.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `R(z + n, w)`.
    pub fn shift_z(&self, n: i64) -> Self {
        WRat {
            num: self.num.shift_z(n),
            den: self.den.shift_z(n),
        }
    }

    /// Value at a point of P^1.
    pub fn eval_point(&self, p: &Point) -> Point {
        match p {
            Point::Finite(x) => {
                let d = self.den.eval(x);
                if d.is_zero() {
                    Point::Infinity
                } else {
                    Point::Finite(&self.num.eval(x) * &d.inv().expect("nonzero"))
                }
            }
            Point::Infinity => {
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                if self.num.is_zero() || dn < dd {
                    Point::Finite(RatFunc::zero())
                } else if dn > dd {
                    Point::Infinity
                } else {
                    let a = self.num.leading().expect("nonzero");
                    let b = self.den.leading().expect("nonzero");
                    Point::Finite(a.checked_div(b).expect("nonzero"))
                }
            }
        }
    }

    /// `R(x)` for `x` in Q(z), or `None` at a pole.
    pub fn eval(&self, x: &RatFunc) -> Option<RatFunc> {
        match self.eval_point(&Point::Finite(x.clone())) {
            Point::Finite(v) => Some(v),
            Point::Infinity => None,
        }
    }

    pub fn add(&self, rhs: &WRat) -> WRat {
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Self::reduce(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }

    pub fn neg(&self) -> WRat {
        WRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, rhs: &WRat) -> WRat {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &WRat) -> WRat {
        Self::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn inv(&self) -> Result<WRat, WAlgebraError> {
        if self.is_zero() {
            return Err(WAlgebraError::ZeroDenominator);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &WRat) -> Result<WRat, WAlgebraError> {
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn powi(&self, e: i64) -> Result<WRat, WAlgebraError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(WRat {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// `self(inner(w))` in lowest terms, using the homogeneous form
    /// `P^h(A, B) / Q^h(A, B)` with `d = deg self`.
    pub fn compose(&self, inner: &WRat) -> WRat {
        let d = self.degree();
        let homog = |p: &WPoly| -> WPoly {
            let mut acc = WPoly::zero();
            let mut bpow = WPoly::one();
            let mut terms: Vec<WPoly> = Vec::with_capacity(d + 1);
            for _ in 0..=d {
                terms.push(bpow.clone());
                bpow = &bpow * &inner.den;
            }
            let mut apow = WPoly::one();
            for i in 0..=d {
                let c = p.coeff(i);
                if !c.is_zero() {
                    acc = &acc + &(&apow * &terms[d - i]).scale(&c);
                }
                apow = &apow * &inner.num;
            }
            acc
        };
        Self::reduce(homog(&self.num), homog(&self.den))
    }

    /// Parses the canonical grammar in the variables `z` and `w`.
    pub fn parse(src: &str) -> Result<WRat, ParseError> {
        crate::exact::parse::parse_in(src)
    }

    /// Canonical JSON value `{"num": [...], "den": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl Default for WRat {
    fn default() -> Self {
        Self::from_poly(WPoly::zero())
    }
}

impl fmt::Display for WRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Serialize for WRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WRat", 2)?;
        st.serialize_field("num", &self.num)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

impl ExprField for WRat {
    fn from_integer(n: &BigInt) -> Self {
        WRat::constant(<RatFunc as ExprField>::from_integer(n))
    }
    fn variable(name: char) -> Option<Self> {
        match name {
            'z' => Some(WRat::constant(RatFunc::z())),
            'w' => Some(WRat::w()),
            _ => None,
        }
    }
    fn add(&self, rhs: &Self) -> Self {
        WRat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        WRat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        WRat::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        WRat::neg(self)
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        WRat::div(self, rhs).ok()
    }
    fn powi(&self, e: i64) -> Option<Self> {
        WRat::powi(self, e).ok()
    }
}

impl std::str::FromStr for WRat {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WRat::parse(s)
    }
}

impl std::str::FromStr for WPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r: WRat = s.parse()?;
        if !r.is_polynomial() {
            return Err(ParseError {
                position: 0,
                message: "expected a polynomial in w".into(),
            });
        }
        Ok(r.num().clone())
    }
}

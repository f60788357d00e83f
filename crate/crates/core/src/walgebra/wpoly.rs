//! Polynomials in `w` over Q(z).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::exact::{RatFunc, Rational, ZPoly};
use crate::poly::IntBiPoly;

/// `sum_i coeffs[i] w^i`, ascending and trimmed; zero has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct WPoly {
    coeffs: Vec<RatFunc>,
}

impl WPoly {
    pub fn zero() -> Self {
        WPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(RatFunc::one())
    }

    pub fn w() -> Self {
        WPoly {
            coeffs: vec![RatFunc::zero(), RatFunc::one()],
        }
    }

    /// `w - c`.
    pub fn linear(c: &RatFunc) -> Self {
        Self::from_coeffs(vec![-c, RatFunc::one()])
    }

    pub fn constant(c: RatFunc) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        WPoly { coeffs }
    }

    /// Coefficients given as integer polynomials in `z`, ascending in `w`.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_coeffs(rows.iter().map(|r| RatFunc::from_poly(ZPoly::from_ints(r))).collect())
    }

    pub fn monomial(c: RatFunc, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![RatFunc::zero(); k];
        coeffs.push(c);
        WPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree at most 0 in `w`.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        WPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Horner evaluation at `w = x`.
    pub fn eval(&self, x: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Evaluation at a rational `z = z0` and rational `w = x`, or `None` at a
    /// pole of some coefficient.
    pub fn eval_at(&self, z0: &Rational, x: &Rational) -> Option<Rational> {
        let mut acc = Rational::from_integer(BigInt::from(0));
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.eval(z0)?;
        }
        Some(acc)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&Rational::from_integer(BigInt::from(i))))
                .collect(),
        )
    }

    /// Applies the shift `z -> z + n` to every coefficient.
    pub fn shift_z(&self, n: i64) -> Self {
        WPoly {
            coeffs: self.coeffs.iter().map(|c| c.shift(n)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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

    /// Division with remainder in Q(z)[w].
    pub fn div_rem(&self, divisor: &WPoly) -> (WPoly, WPoly) {
        let lc = divisor.leading().expect("division by the zero polynomial");
        let inv = lc.inv().expect("nonzero leading coefficient");
        let m = divisor.coeffs.len();
        let mut r = self.coeffs.clone();
        if r.len() < m {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![RatFunc::zero(); r.len() - m + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + m - 1];
            if top.is_zero() {
                continue;
            }
            let c = top * &inv;
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                if !dj.is_zero() {
                    r[k + j] = &r[k + j] - &(&c * dj);
                }
            }
            q[k] = c;
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    pub fn exact_div(&self, divisor: &WPoly) -> Option<WPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Substitutes `w -> x` for a polynomial `x`.
    pub fn compose(&self, x: &WPoly) -> WPoly {
        let mut acc = WPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &WPoly::constant(c.clone());
        }
        acc
    }

    /// Writes `self = unit * int` with `int` in Z[z][w] (not normalized).
    pub fn to_int(&self) -> (RatFunc, IntBiPoly) {
        if self.is_zero() {
            return (RatFunc::one(), IntBiPoly::zero());
        }
        let mut den = ZPoly::one();
        for c in &self.coeffs {
            if !c.den().is_one() {
                let g = den.gcd(c.den());
                den = (&den * c.den()).exact_div(&g).expect("gcd divides");
            }
        }
        let cleared: Vec<ZPoly> = self
            .coeffs
            .iter()
            .map(|c| {
                if c.den() == &den {
                    c.num().clone()
                } else {
                    c.num() * &den.exact_div(c.den()).expect("common denominator")
                }
            })
            .collect();
        let mut ideno = BigInt::one();
        for p in &cleared {
            let (_, d) = p.to_integer_parts();
            ideno = num_integer::Integer::lcm(&ideno, &d);
        }
        let rows = cleared
            .iter()
            .map(|p| {
                let (ints, d) = p.to_integer_parts();
                let f = &ideno / d;
                ints.into_iter().map(|x| x * &f).collect()
            })
            .collect();
        let unit = RatFunc::new(ZPoly::one(), den.scale(&Rational::from_integer(ideno))).expect("nonzero denominator");
        (unit, IntBiPoly::from_rows(rows))
    }

    pub fn from_int(p: &IntBiPoly) -> WPoly {
        WPoly::from_coeffs(
            p.rows()
                .iter()
                .map(|r| RatFunc::from_poly(ZPoly::from_integers(r)))
                .collect(),
        )
    }

    /// Canonical string of each coefficient, ascending, as used in JSON.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl Add for &WPoly {
    type Output = WPoly;
    fn add(self, rhs: &WPoly) -> WPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        WPoly::from_coeffs(
            (0..n)
                .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &WPoly {
    type Output = WPoly;
    fn sub(self, rhs: &WPoly) -> WPoly {
        self + &(-rhs)
    }
}

impl Neg for &WPoly {
    type Output = WPoly;
    fn neg(self) -> WPoly {
        WPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &WPoly {
    type Output = WPoly;
    fn mul(self, rhs: &WPoly) -> WPoly {
        if self.is_zero() || rhs.is_zero() {
            return WPoly::zero();
        }
        let mut out = vec![RatFunc::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        WPoly::from_coeffs(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for WPoly {
            type Output = WPoly;
            fn $m(self, rhs: WPoly) -> WPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for WPoly {
    type Output = WPoly;
    fn neg(self) -> WPoly {
        -&self
    }
}

/// A coefficient that can be written as `c*w^k` without parentheses.
fn is_simple_factor(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.contains(" + ") && !body.contains(" - ")
}

pub(crate) fn fmt_in_w(coeffs: &[RatFunc], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if is_simple_factor(&s) => (true, rest.to_string()),
            _ => (false, s.clone()),
        };
        let wpart = match k {
            0 => String::new(),
            1 => "w".to_string(),
            _ => format!("w^{k}"),
        };
        let term = if k == 0 {
            body.clone()
        } else if body == "1" {
            wpart
        } else if is_simple_factor(&body) {
            format!("{body}*{wpart}")
        } else {
            format!("({body})*{wpart}")
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
            out.push_str(&term);
        } else if neg {
            out.push_str(" - ");
            out.push_str(&term);
        } else if let Some(rest) = term.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&term);
        }
    }
    write!(f, "{out}")
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_in_w(&self.coeffs, f)
    }
}

impl Serialize for WPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}

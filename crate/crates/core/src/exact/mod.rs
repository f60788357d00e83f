//! Exact arithmetic over Q, Q[z] and Q(z), the shift automorphism, and
//! local vanishing orders.

mod order;
pub mod parse;
mod ratfunc;
pub mod rational;
mod zpoly;

use num_bigint::BigInt;
use thiserror::Error;

pub use order::LocalOrder;
pub use parse::{ExprField, ParseError};
pub use ratfunc::RatFunc;
pub use rational::{rat, Rational};
pub use zpoly::ZPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Order of vanishing of `g` at `z = beta`.
pub fn ord_at(g: &RatFunc, beta: &Rational) -> LocalOrder {
    g.ord_at(beta)
}

/// `max(ord_beta(g), 0)`.
pub fn ord_plus_at(g: &RatFunc, beta: &Rational) -> LocalOrder {
    g.ord_plus_at(beta)
}

/// `g(z + n)`.
pub fn shift(g: &RatFunc, n: i64) -> RatFunc {
    g.shift(n)
}

/// The four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arithmetic(a: &RatFunc, b: &RatFunc, op: FieldOp) -> Result<RatFunc, ExactError> {
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
        FieldOp::Div => a.checked_div(b)?,
    })
}

impl ExprField for RatFunc {
    fn from_integer(n: &BigInt) -> Self {
        RatFunc::constant(Rational::from_integer(n.clone()))
    }
    fn variable(name: char) -> Option<Self> {
        (name == 'z').then(RatFunc::z)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, rhs: &Self) -> Option<Self> {
        self.checked_div(rhs).ok()
    }
    fn powi(&self, e: i64) -> Option<Self> {
        self.pow(e).ok()
    }
}

impl std::str::FromStr for RatFunc {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_in(s)
    }
}

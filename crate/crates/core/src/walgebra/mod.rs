//! Polynomials and rational functions in the dynamical variable `w` with
//! coefficients in Q(z): gcd, resultant, Bezout identity and factorization.

mod linalg;
mod wpoly;
mod wrat;

use serde::Serialize;
use thiserror::Error;

use crate::exact::RatFunc;
use crate::poly::{factor, gcd};

pub use linalg::{determinant, solve};
pub use wpoly::WPoly;
pub use wrat::{Point, WRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WAlgebraError {
    #[error("the polynomials have a common factor (resultant is zero)")]
    CommonFactor,
    #[error("both polynomials are constant in w")]
    Degenerate,
    #[error("zero denominator")]
    ZeroDenominator,
}

/// `A P + B Q = 1` with `deg A < deg Q`, `deg B < deg P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BezoutPair {
    pub a: WPoly,
    pub b: WPoly,
    pub resultant: RatFunc,
}

/// Monic gcd in Q(z)[w]. The gcd of two zeros is zero.
pub fn gcd_w(p: &WPoly, q: &WPoly) -> WPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    let (_, ip) = p.to_int();
    let (_, iq) = q.to_int();
    WPoly::from_int(&gcd::gcd(&ip, &iq)).monic()
}

/// Coprime in Q(z)[w].
pub fn is_coprime(p: &WPoly, q: &WPoly) -> bool {
    gcd_w(p, q).is_one()
}

/// The Sylvester matrix of `p` (degree d) and `q` (degree e): `e` shifted
/// rows of `p`'s coefficients followed by `d` shifted rows of `q`'s,
/// highest degree first.
pub fn sylvester_matrix(p: &WPoly, q: &WPoly) -> Vec<Vec<RatFunc>> {
    let d = p.degree().expect("nonzero polynomial");
    let e = q.degree().expect("nonzero polynomial");
    let n = d + e;
    let mut m = vec![vec![RatFunc::zero(); n]; n];
    for i in 0..e {
        for k in 0..=d {
            m[i][i + k] = p.coeff(d - k);
        }
    }
    for i in 0..d {
        for k in 0..=e {
            m[e + i][i + k] = q.coeff(e - k);
        }
    }
    m
}

/// Determinant of the Sylvester matrix; `lc(p)^e * prod q(alpha)` over the roots of `p`.
pub fn resultant(p: &WPoly, q: &WPoly) -> RatFunc {
    determinant(sylvester_matrix(p, q))
}

/// Solves the `(d+e) x (d+e)` linear system for the coefficients of `A`
/// and `B` in `A P + B Q = 1`.
pub fn bezout(p: &WPoly, q: &WPoly) -> Result<BezoutPair, WAlgebraError> {
    let (Some(d), Some(e)) = (p.degree(), q.degree()) else {
        return if p.is_constant() && q.is_constant() {
            Err(WAlgebraError::Degenerate)
        } else {
            Err(WAlgebraError::CommonFactor)
        };
    };
    let n = d + e;
    if n == 0 {
        return Err(WAlgebraError::Degenerate);
    }
    // columns: alpha_0..alpha_{e-1}, beta_0..beta_{d-1}; row k is the w^k coefficient
    let mut m = vec![vec![RatFunc::zero(); n]; n];
    for j in 0..e {
        for (i, c) in p.coeffs().iter().enumerate() {
            m[i + j][j] = c.clone();
        }
    }
    for j in 0..d {
        for (i, c) in q.coeffs().iter().enumerate() {
            m[i + j][e + j] = c.clone();
        }
    }
    let mut rhs = vec![RatFunc::zero(); n];
    rhs[0] = RatFunc::one();
    let x = solve(m, rhs).ok_or(WAlgebraError::CommonFactor)?;
    let a = WPoly::from_coeffs(x[..e].to_vec());
    let b = WPoly::from_coeffs(x[e..].to_vec());
    Ok(BezoutPair {
        a,
        b,
        resultant: resultant(p, q),
    })
}

/// `q = unit * prod h_i^{e_i}` with monic irreducible `h_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub unit: RatFunc,
    pub factors: Vec<(WPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> WPoly {
        self.factors
            .iter()
            .fold(WPoly::constant(self.unit.clone()), |acc, (h, e)| &acc * &h.pow(*e))
    }
}

/// Irreducible factorization over Q(z), factors monic in `w`.
pub fn factorization(q: &WPoly) -> Factorization {
    assert!(!q.is_zero(), "factoring the zero polynomial");
    let unit = q.leading().expect("nonzero").clone();
    if q.is_constant() {
        return Factorization {
            unit,
            factors: Vec::new(),
        };
    }
    let (_, iq) = q.to_int();
    let factors = factor::factor(&iq)
        .into_iter()
        .map(|(h, e)| (WPoly::from_int(&h).monic(), e))
        .collect();
    Factorization { unit, factors }
}

/// Pairs `(H, e)` of monic irreducible factors and multiplicities.
pub fn squarefree_decomposition(q: &WPoly) -> Vec<(WPoly, u32)> {
    factorization(q).factors
}

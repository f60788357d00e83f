//! Pointwise order estimates for `Q(f)/P(f)` at a point `z = beta`.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{LocalOrder, RatFunc, Rational};
use crate::walgebra::{bezout, WAlgebraError, WPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LocalError {
    #[error(transparent)]
    Algebra(#[from] WAlgebraError),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("deg P must be at least deg Q")]
    DegreeOrder,
}

fn ord_plus(g: &RatFunc, beta: &Rational) -> i64 {
    match g.ord_plus_at(beta) {
        LocalOrder::Finite(v) => v,
        LocalOrder::Infinity => panic!("order of the zero function"),
    }
}

fn ord_plus_inv(g: &RatFunc, beta: &Rational) -> i64 {
    ord_plus(&g.inv().expect("nonzero"), beta)
}

fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Escape radius `C_beta(S)` in the order scale.
pub fn c_beta(s: &WPoly, beta: &Rational) -> Rational {
    let Some(m) = s.degree() else {
        return int(0);
    };
    if m == 0 {
        return int(0);
    }
    let cm = s.leading().expect("nonzero");
    let mut best = Rational::new(BigInt::from(ord_plus_inv(cm, beta)), BigInt::from(m));
    for (i, ci) in s.coeffs()[..m].iter().enumerate() {
        if ci.is_zero() {
            continue;
        }
        let q = cm.checked_div(ci).expect("nonzero");
        let cand = Rational::new(BigInt::from(ord_plus(&q, beta)), BigInt::from(m - i));
        if cand > best {
            best = cand;
        }
    }
    best
}

/// `sum_i ord+_beta(1/c_i)` over nonzero coefficients.
pub fn kappa_beta(s: &WPoly, beta: &Rational) -> i64 {
    s.coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| ord_plus_inv(c, beta))
        .sum()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalBudget {
    #[serde(serialize_with = "ser_q")]
    pub c_p: Rational,
    #[serde(serialize_with = "ser_q")]
    pub c_q: Rational,
    pub kappa_a: i64,
    pub kappa_b: i64,
    /// `ord+(b_e) + ord+(a_d) + ord+(1/b_e)`.
    pub head_terms: i64,
    #[serde(rename = "E", serialize_with = "ser_q")]
    pub e: Rational,
}

fn ser_q<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&crate::exact::rational::fmt_rational(q))
}

fn degrees(p: &WPoly, q: &WPoly) -> Result<(usize, usize), LocalError> {
    let (Some(d), Some(e)) = (p.degree(), q.degree()) else {
        return Err(LocalError::DegenerateInput("P and Q must be nonzero"));
    };
    if d < e {
        return Err(LocalError::DegreeOrder);
    }
    if d == 0 {
        return Err(WAlgebraError::Degenerate.into());
    }
    Ok((d, e))
}

/// The error term `E_beta` and its parts.
pub fn error_budget(p: &WPoly, q: &WPoly, beta: &Rational) -> Result<LocalBudget, LocalError> {
    let (d, e) = degrees(p, q)?;
    let pair = bezout(p, q)?;
    let c_p = c_beta(p, beta);
    let c_q = c_beta(q, beta);
    let kappa_a = kappa_beta(&pair.a, beta);
    let kappa_b = kappa_beta(&pair.b, beta);
    let a_d = p.leading().expect("nonzero");
    let b_e = q.leading().expect("nonzero");
    let head_terms = ord_plus(b_e, beta) + ord_plus(a_d, beta) + ord_plus_inv(b_e, beta);
    let total = int((2 * d - e - 1) as i64) * (&c_p + &c_q) + int(kappa_a + kappa_b + head_terms);
    Ok(LocalBudget {
        c_p,
        c_q,
        kappa_a,
        kappa_b,
        head_terms,
        e: total,
    })
}

/// Which case of the estimate the input falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `ord(1/f) > C(P) + C(Q)`.
    DeepPole,
    /// `ord(Q(f)) > (d - 1)(C(P) + C(Q)) + kappa_B`.
    Bezout,
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderCheck {
    pub lhs: i64,
    #[serde(serialize_with = "ser_q")]
    pub rhs: Rational,
    pub holds: bool,
    pub regime: Regime,
    pub budget: LocalBudget,
}

/// `ord+(Q(f)/P(f)) >= (deg P - deg Q) ord+(1/f) + ord+(Q(f)) - E_beta`.
pub fn verify_order_inequality(p: &WPoly, q: &WPoly, f: &RatFunc, beta: &Rational) -> Result<OrderCheck, LocalError> {
    let (d, e) = degrees(p, q)?;
    if f.is_zero() {
        return Err(LocalError::DegenerateInput("f is zero"));
    }
    let qf = q.eval(f);
    let pf = p.eval(f);
    if qf.is_zero() {
        return Err(LocalError::DegenerateInput("Q(f) vanishes identically"));
    }
    if pf.is_zero() {
        return Err(LocalError::DegenerateInput("P(f) vanishes identically"));
    }
    let budget = error_budget(p, q, beta)?;
    let lhs = ord_plus(&qf.checked_div(&pf).expect("nonzero"), beta);
    let pole = ord_plus_inv(f, beta);
    let q_ord = ord_plus(&qf, beta);
    let rhs = int((d - e) as i64 * pole + q_ord) - &budget.e;
    let c = &budget.c_p + &budget.c_q;
    let ord_inv_f = -f.ord_at(beta).finite().expect("nonzero");
    let ord_qf = qf.ord_at(beta).finite().expect("nonzero");
    let regime = if int(ord_inv_f) > c {
        Regime::DeepPole
    } else if int(ord_qf) > int(d as i64 - 1) * &c + int(budget.kappa_b) {
        Regime::Bezout
    } else {
        Regime::Trivial
    };
    Ok(OrderCheck {
        lhs,
        holds: int(lhs) >= rhs,
        rhs,
        regime,
        budget,
    })
}

/// `ord_beta(1/S(f))`, or `None` if `S(f)` vanishes.
pub fn pole_order_of_value(s: &WPoly, f: &RatFunc, beta: &Rational) -> Option<i64> {
    let v = s.eval(f);
    if v.is_zero() {
        return None;
    }
    Some(-v.ord_at(beta).finite()?)
}

/// `true` when every nonzero coefficient is a unit at `beta`.
pub fn is_unit_at(s: &WPoly, beta: &Rational) -> bool {
    s.coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .all(|c| c.ord_at(beta) == LocalOrder::Finite(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn wp(s: &str) -> WPoly {
        s.parse().unwrap()
    }

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn c_beta_examples() {
        let zero = rat(0, 1);
        assert_eq!(c_beta(&wp("w^2"), &zero), rat(0, 1));
        assert_eq!(c_beta(&wp("z*w^2 + 1"), &zero), rat(1, 2));
        assert_eq!(c_beta(&wp("z*w^2 + w"), &zero), rat(1, 1));
    }

    #[test]
    fn kappa_examples() {
        let zero = rat(0, 1);
        assert_eq!(kappa_beta(&wp("3*w^2 - w + 5"), &zero), 0);
        assert_eq!(kappa_beta(&wp("(1/z)*w + 1"), &zero), 1);
        assert_eq!(kappa_beta(&wp("(1/z^2)*w^2 + (1/z)*w"), &zero), 3);
    }

    #[test]
    fn budget_examples() {
        let b = error_budget(&wp("w^2"), &wp("w - 1"), &rat(0, 1)).unwrap();
        assert_eq!(b.e, rat(0, 1));
        let b = error_budget(&wp("w^2"), &wp("w - 1"), &rat(5, 1)).unwrap();
        assert_eq!(b.e, rat(0, 1));
        // A = z^2, B = -z*w - 1; C(P) = 0, C(Q) = 1, kappa_A = kappa_B = 0,
        // head = ord+(z) = 1, so E = (2*2 - 1 - 1)*1 + 1 = 3
        let b = error_budget(&wp("w^2"), &wp("z*w - 1"), &rat(0, 1)).unwrap();
        assert_eq!((b.c_p.clone(), b.c_q.clone()), (rat(0, 1), rat(1, 1)));
        assert_eq!((b.kappa_a, b.kappa_b, b.head_terms), (0, 0, 1));
        assert_eq!(b.e, rat(3, 1));
        assert!(matches!(
            error_budget(&wp("w^2 - 1"), &wp("w - 1"), &rat(0, 1)),
            Err(LocalError::Algebra(WAlgebraError::CommonFactor))
        ));
    }

    #[test]
    fn inequality_examples() {
        let zero = rat(0, 1);
        let c = verify_order_inequality(&wp("w^2"), &wp("1"), &rf("1/z"), &zero).unwrap();
        assert_eq!((c.lhs, c.rhs.clone(), c.holds), (2, rat(2, 1), true));
        assert_eq!(c.regime, Regime::DeepPole);
        let c = verify_order_inequality(&wp("w^2"), &wp("w - 1"), &rf("z + 1"), &zero).unwrap();
        assert_eq!((c.lhs, c.rhs.clone(), c.holds), (1, rat(1, 1), true));
        assert_eq!(c.regime, Regime::Bezout);
        let c = verify_order_inequality(&wp("w^2"), &wp("w - 1"), &rf("7"), &zero).unwrap();
        assert_eq!(c.lhs, 0);
        assert!(c.rhs <= rat(0, 1) && c.holds);
        assert_eq!(c.regime, Regime::Trivial);
        assert_eq!(
            verify_order_inequality(&wp("w^2"), &wp("w - 1"), &rf("1"), &zero),
            Err(LocalError::DegenerateInput("Q(f) vanishes identically"))
        );
    }
}

//! Arbitrary-precision rationals, backed by `num-rational`.

use num_bigint::BigInt;
use num_traits::One;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor used throughout the crate and its tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `a` or `a/b` (no spaces), parse-stable under the expression grammar.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Nearest `f64`, saturating on overflow.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().bits() as f64;
        let d = q.denom().bits() as f64;
        let sign = if *q.numer() < BigInt::from(0) { -1.0 } else { 1.0 };
        if n > d {
            sign * f64::INFINITY
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_text() {
        for q in [rat(1, 4), rat(-7, 3), rat(0, 5), rat(12, 1)] {
            assert_eq!(parse_rational(&fmt_rational(&q)), Some(q));
        }
        assert_eq!(parse_rational("3/0"), None);
    }
}

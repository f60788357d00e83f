use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg};

use serde::{Serialize, Serializer};

/// Order of vanishing at a point. The zero function has order `Infinity`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LocalOrder {
    Finite(i64),
    Infinity,
}

impl LocalOrder {
    pub fn finite(self) -> Option<i64> {
        match self {
            LocalOrder::Finite(v) => Some(v),
            LocalOrder::Infinity => None,
        }
    }

    /// `max(ord, 0)`.
    pub fn plus(self) -> LocalOrder {
        match self {
            LocalOrder::Finite(v) => LocalOrder::Finite(v.max(0)),
            LocalOrder::Infinity => LocalOrder::Infinity,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == LocalOrder::Infinity
    }
}

impl PartialOrd for LocalOrder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LocalOrder {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LocalOrder::Finite(a), LocalOrder::Finite(b)) => a.cmp(b),
            (LocalOrder::Finite(_), LocalOrder::Infinity) => Ordering::Less,
            (LocalOrder::Infinity, LocalOrder::Finite(_)) => Ordering::Greater,
            (LocalOrder::Infinity, LocalOrder::Infinity) => Ordering::Equal,
        }
    }
}

impl Add for LocalOrder {
    type Output = LocalOrder;
    fn add(self, rhs: LocalOrder) -> LocalOrder {
        match (self, rhs) {
            (LocalOrder::Finite(a), LocalOrder::Finite(b)) => LocalOrder::Finite(a + b),
            _ => LocalOrder::Infinity,
        }
    }
}

impl Neg for LocalOrder {
    type Output = LocalOrder;
    /// Only meaningful for finite orders (`ord(1/f) = -ord(f)` needs `f != 0`).
    fn neg(self) -> LocalOrder {
        match self {
            LocalOrder::Finite(a) => LocalOrder::Finite(-a),
            LocalOrder::Infinity => panic!("negating the order of the zero function"),
        }
    }
}

impl fmt::Display for LocalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalOrder::Finite(v) => write!(f, "{v}"),
            LocalOrder::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for LocalOrder {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LocalOrder::Finite(v) => s.serialize_i64(*v),
            LocalOrder::Infinity => s.serialize_str("inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_plus() {
        assert!(LocalOrder::Finite(100) < LocalOrder::Infinity);
        assert_eq!(LocalOrder::Finite(-3).plus(), LocalOrder::Finite(0));
        assert_eq!(LocalOrder::Infinity.plus(), LocalOrder::Infinity);
        assert_eq!(LocalOrder::Finite(2) + LocalOrder::Infinity, LocalOrder::Infinity);
    }
}

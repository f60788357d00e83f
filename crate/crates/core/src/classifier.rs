//! Normal forms of `R`: polynomial maps, the inverse-power form
//! `a (w - b)^(-d) + b(z + 1)`, shift-exceptional points and the Mobius
//! conjugation that moves a target to infinity.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::composition::{compose_chain, root_multiplicity};
use crate::exact::{RatFunc, Rational};
use crate::walgebra::{WPoly, WRat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("the two-step composite is polynomial but R is not of the form a (w - b)^-d + b(z + 1): {0}")]
    MalformedInversePower(String),
    #[error("the map must have degree at least 2 in w")]
    DegreeTooSmall,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Polynomial,
    /// `R = a (w - b)^(-d) + b(z + 1)`.
    InversePower {
        a: RatFunc,
        b: RatFunc,
        d: usize,
    },
    Generic,
}

impl NormalForm {
    pub fn tag(&self) -> &'static str {
        match self {
            NormalForm::Polynomial => "Polynomial",
            NormalForm::InversePower { .. } => "InversePower",
            NormalForm::Generic => "Generic",
        }
    }

    /// The map described by an inverse-power form.
    pub fn reconstruct(&self) -> Option<WRat> {
        let NormalForm::InversePower { a, b, d } = self else {
            return None;
        };
        let pole = WPoly::linear(b).pow(*d as u32);
        let head = WRat::new(WPoly::constant(a.clone()), pole).ok()?;
        Some(head.add(&WRat::constant(b.shift(1))))
    }
}

impl Serialize for NormalForm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NormalForm", 4)?;
        st.serialize_field("tag", self.tag())?;
        match self {
            NormalForm::InversePower { a, b, d } => {
                st.serialize_field("a", &a.to_string())?;
                st.serialize_field("b", &b.to_string())?;
                st.serialize_field("d", d)?;
            }
            _ => {
                st.serialize_field("a", &None::<String>)?;
                st.serialize_field("b", &None::<String>)?;
                st.serialize_field("d", &None::<usize>)?;
            }
        }
        st.end()
    }
}

pub fn classify(r: &WRat) -> Result<NormalForm, ClassifierError> {
    let d = r.degree();
    if d < 2 {
        return Err(ClassifierError::DegreeTooSmall);
    }
    if r.is_polynomial() {
        return Ok(NormalForm::Polynomial);
    }
    if compose_chain(r, 2).den_degree() > 0 {
        return Ok(NormalForm::Generic);
    }
    let malformed = |why: &str| ClassifierError::MalformedInversePower(why.to_string());
    let q = r.den();
    if q.degree() != Some(d) {
        return Err(malformed("denominator degree differs from deg R"));
    }
    let b = q.coeff(d - 1).scale(&Rational::new((-1).into(), (d as i64).into()));
    if &WPoly::linear(&b).pow(d as u32) != q {
        return Err(malformed("denominator is not a single pole of order d"));
    }
    let a = r.num() - &q.scale(&b.shift(1));
    if !a.is_constant() || a.is_zero() {
        return Err(malformed("value at infinity is not b(z + 1)"));
    }
    let form = NormalForm::InversePower { a: a.coeff(0), b, d };
    if form.reconstruct().as_ref() != Some(r) {
        return Err(malformed("reconstruction mismatch"));
    }
    Ok(form)
}

/// Whether `w = a` is a totally ramified fixed point of `R_z o R_{z-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalVerdict {
    pub target: RatFunc,
    pub is_exceptional: bool,
    pub fixed: bool,
    /// `ord_{w=a}(G(w) - a)`, negative when `a` is a pole of `G`.
    pub local_multiplicity: i64,
    pub full_degree: usize,
}

impl Serialize for ExceptionalVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExceptionalVerdict", 5)?;
        st.serialize_field("target", &self.target.to_string())?;
        st.serialize_field("fixed", &self.fixed)?;
        st.serialize_field("multiplicity", &self.local_multiplicity)?;
        st.serialize_field("degree", &self.full_degree)?;
        st.serialize_field("exceptional", &self.is_exceptional)?;
        st.end()
    }
}

pub fn is_shift_exceptional(r: &WRat, a: &Rational) -> Result<ExceptionalVerdict, ClassifierError> {
    let d = r.degree();
    if d < 2 {
        return Err(ClassifierError::DegreeTooSmall);
    }
    let chain = compose_chain(r, 2);
    let g = chain.value();
    let target = RatFunc::constant(a.clone());
    let fixed = g.eval(&target).as_ref() == Some(&target);
    let diff = g.num() - &g.den().scale(&target);
    let local_multiplicity = root_multiplicity(&diff, &target) as i64 - root_multiplicity(g.den(), &target) as i64;
    let full_degree = d * d;
    Ok(ExceptionalVerdict {
        target,
        is_exceptional: fixed && local_multiplicity == full_degree as i64,
        fixed,
        local_multiplicity,
        full_degree,
    })
}

/// `mu_z(w) = 1/w + a(z)`.
pub fn mobius(a: &RatFunc) -> WRat {
    WRat::new(WPoly::from_coeffs(vec![RatFunc::one(), a.clone()]), WPoly::w()).expect("nonzero denominator")
}

/// `mu_z^{-1}(w) = 1/(w - a(z))`.
pub fn mobius_inverse(a: &RatFunc) -> WRat {
    WRat::new(WPoly::one(), WPoly::linear(a)).expect("nonzero denominator")
}

/// `S_z = mu_{z+1}^{-1} o R_z o mu_z`, which sends the target `a` to infinity.
pub fn conjugate_target(r: &WRat, a: &RatFunc) -> WRat {
    mobius_inverse(&a.shift(1)).compose(&r.compose(&mobius(a)))
}

/// Inverse of [`conjugate_target`]: `R_z = mu_{z+1} o S_z o mu_z^{-1}`.
pub fn unconjugate_target(s: &WRat, a: &RatFunc) -> WRat {
    mobius(&a.shift(1)).compose(&s.compose(&mobius_inverse(a)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn map(s: &str) -> WRat {
        s.parse().unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&map("w^2 + z")).unwrap(), NormalForm::Polynomial);
        let f = classify(&map("z/(w-1)^2 + 1")).unwrap();
        assert_eq!(
            f,
            NormalForm::InversePower {
                a: RatFunc::z(),
                b: RatFunc::one(),
                d: 2
            }
        );
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            r#"{"tag":"InversePower","a":"z","b":"1","d":2}"#
        );
        assert_eq!(classify(&map("(w^2+z)/w")).unwrap(), NormalForm::Generic);
        assert_eq!(classify(&map("w + z")), Err(ClassifierError::DegreeTooSmall));
    }

    #[test]
    fn moving_inverse_power() {
        let r = map("(z^2+1)/(w - z)^3 + z + 1");
        let f = classify(&r).unwrap();
        assert_eq!(f.reconstruct().unwrap(), r);
        // a (w - b)^-d + c with c != b(z + 1) has a non-polynomial composite
        assert_eq!(classify(&map("z/(w-1)^2 + 2")).unwrap(), NormalForm::Generic);
    }

    #[test]
    fn exceptional_examples() {
        let v = is_shift_exceptional(&map("w^2"), &rat(0, 1)).unwrap();
        assert!(v.is_exceptional);
        assert_eq!(v.local_multiplicity, 4);
        let v = is_shift_exceptional(&map("w^2"), &rat(1, 1)).unwrap();
        assert!(v.fixed && !v.is_exceptional);
        assert_eq!(v.local_multiplicity, 1);
        let v = is_shift_exceptional(&map("w^2 - 2"), &rat(2, 1)).unwrap();
        assert!(v.fixed && !v.is_exceptional);
        assert_eq!(v.local_multiplicity, 1);
        let v = is_shift_exceptional(&map("(w^2+z)/w"), &rat(0, 1)).unwrap();
        assert!(!v.fixed);
        assert_eq!(v.local_multiplicity, -1);
    }

    #[test]
    fn conjugation_examples() {
        assert_eq!(conjugate_target(&map("w^2"), &RatFunc::zero()), map("w^2"));
        // 1/((1/w + 1)^2 - 1) = w^2/(2w + 1)
        assert_eq!(conjugate_target(&map("w^2"), &RatFunc::one()), map("w^2/(2*w + 1)"));
        let r = map("(w^2+z)/w");
        let a: RatFunc = "1/(z+2)".parse().unwrap();
        let s = conjugate_target(&r, &a);
        assert_eq!(s.degree(), 2);
        assert_eq!(unconjugate_target(&s, &a), r);
    }
}

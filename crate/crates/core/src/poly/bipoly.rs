//! Dense polynomials in Z[z][w].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::fp::{Fp, PolyFp};
use super::intpoly::{self, IntPoly};

/// `sum_i rows[i](z) w^i`; the last row is nonzero, the zero polynomial has no rows.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntBiPoly {
    rows: Vec<IntPoly>,
}

impl IntBiPoly {
    pub fn zero() -> Self {
        IntBiPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(vec![BigInt::one()])
    }

    pub fn w() -> Self {
        Self::from_rows(vec![Vec::new(), vec![BigInt::one()]])
    }

    /// A polynomial in `z` alone.
    pub fn constant(c: IntPoly) -> Self {
        Self::from_rows(vec![c])
    }

    pub fn from_rows(rows: Vec<IntPoly>) -> Self {
        let mut rows: Vec<IntPoly> = rows.into_iter().map(intpoly::trim).collect();
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        IntBiPoly { rows }
    }

    /// From `(w-degree, z-degree, coefficient)` triples.
    pub fn from_terms(terms: &[(usize, usize, i64)]) -> Self {
        let mut rows: Vec<IntPoly> = Vec::new();
        for &(i, j, c) in terms {
            if rows.len() <= i {
                rows.resize(i + 1, Vec::new());
            }
            if rows[i].len() <= j {
                rows[i].resize(j + 1, BigInt::zero());
            }
            rows[i][j] += c;
        }
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> &[IntPoly] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<IntPoly> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        self.rows.get(i).map(|r| r.as_slice()).unwrap_or(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn deg_w(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    /// Largest z-degree over all rows (0 for the zero polynomial).
    pub fn deg_z(&self) -> usize {
        self.rows.iter().map(|r| r.len().saturating_sub(1)).max().unwrap_or(0)
    }

    pub fn lc_w(&self) -> &[BigInt] {
        self.rows.last().map(|r| r.as_slice()).unwrap_or(&[])
    }

    pub fn is_monic_w(&self) -> bool {
        let lc = self.lc_w();
        lc.len() == 1 && lc[0].is_one()
    }

    pub fn max_bits(&self) -> u64 {
        self.rows
            .iter()
            .flat_map(|r| r.iter().map(|c| c.bits()))
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        Self::from_rows((0..n).map(|i| intpoly::add(self.row(i), other.row(i))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        Self::from_rows((0..n).map(|i| intpoly::sub(self.row(i), other.row(i))).collect())
    }

    pub fn neg(&self) -> Self {
        IntBiPoly {
            rows: self.rows.iter().map(|r| intpoly::neg(r)).collect(),
        }
    }

    pub fn scale_z(&self, c: &[BigInt]) -> Self {
        Self::from_rows(self.rows.iter().map(|r| intpoly::mul(r, c)).collect())
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::from_rows(self.rows.iter().map(|r| intpoly::scale(r, c)).collect())
    }

    /// Multiplies by `w^k`.
    pub fn shift_w(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); k];
        rows.extend(self.rows.iter().cloned());
        IntBiPoly { rows }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let terms_a: usize = self.rows.iter().map(|r| r.len()).sum();
        let terms_b: usize = other.rows.iter().map(|r| r.len()).sum();
        if terms_a.min(terms_b) >= 32 && terms_a * terms_b >= 4096 {
            self.kronecker_mul(other)
        } else {
            self.schoolbook_mul(other)
        }
    }

    pub fn schoolbook_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut rows = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for (j, b) in other.rows.iter().enumerate() {
                if !b.is_empty() {
                    let p = intpoly::mul(a, b);
                    rows[i + j] = intpoly::add(&rows[i + j], &p);
                }
            }
        }
        Self::from_rows(rows)
    }

    fn flatten(&self, stride: usize) -> IntPoly {
        let mut flat = vec![BigInt::zero(); self.rows.len() * stride];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, c) in r.iter().enumerate() {
                flat[i * stride + j] = c.clone();
            }
        }
        intpoly::trim(flat)
    }

    /// Product through one univariate Kronecker product.
    pub fn kronecker_mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let stride = self.deg_z() + other.deg_z() + 1;
        let flat = intpoly::kronecker_mul(&self.flatten(stride), &other.flatten(stride));
        let rows = flat.chunks(stride).map(|c| c.to_vec()).collect();
        Self::from_rows(rows)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `p(z + n, w)`.
    pub fn shift_z(&self, n: &BigInt) -> Self {
        Self::from_rows(self.rows.iter().map(|r| intpoly::shift(r, n)).collect())
    }

    /// `p(x, w)` as a polynomial in `w`.
    pub fn eval_z(&self, x: &BigInt) -> IntPoly {
        intpoly::trim(self.rows.iter().map(|r| intpoly::eval(r, x)).collect())
    }

    /// Reduction of the coefficients modulo `p`, row by row.
    pub fn reduce_mod(&self, fp: &Fp) -> Vec<PolyFp> {
        self.rows.iter().map(|r| fp.poly_from_bigints(r)).collect()
    }

    pub fn derivative_w(&self) -> Self {
        Self::from_rows(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, r)| intpoly::scale(r, &BigInt::from(i)))
                .collect(),
        )
    }

    /// Gcd in Z[z] of the coefficients in `w`, with positive leading coefficient.
    pub fn content_z(&self) -> IntPoly {
        let mut g: IntPoly = Vec::new();
        for r in &self.rows {
            g = intpoly::gcd(&g, r);
            if g.len() == 1 && g[0].is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part over Z[z] whose leading coefficient has a positive top term.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content_z();
        if self.lc_w().last().unwrap().is_negative() {
            c = intpoly::neg(&c);
        }
        if c.len() == 1 && c[0].is_one() {
            return self.clone();
        }
        self.div_z(&c).expect("content divides every coefficient")
    }

    /// Integer content removed, sign normalized; leaves z-content in place.
    pub fn primitive_int(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = BigInt::zero();
        for r in &self.rows {
            for c in r {
                g = g.gcd(c);
            }
        }
        if self.lc_w().last().unwrap().is_negative() {
            g = -g;
        }
        if g.is_one() {
            return self.clone();
        }
        self.scale_div_int(&g)
    }

    fn scale_div_int(&self, g: &BigInt) -> Self {
        IntBiPoly {
            rows: self.rows.iter().map(|r| r.iter().map(|c| c / g).collect()).collect(),
        }
    }

    /// Division of every coefficient by a polynomial in `z`.
    pub fn div_z(&self, c: &[BigInt]) -> Option<Self> {
        let rows = self
            .rows
            .iter()
            .map(|r| intpoly::div_exact(r, c))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::from_rows(rows))
    }

    /// `self / d` in Z[z][w], or `None` if the division is not exact.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (n, m) = (self.rows.len(), d.rows.len());
        if n < m {
            return None;
        }
        if m == 1 {
            return self.div_z(&d.rows[0]);
        }
        let lc = d.lc_w();
        let monic = lc.len() == 1 && lc[0].is_one();
        let mut r = self.rows.clone();
        let mut q = vec![Vec::new(); n - m + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + m - 1];
            if top.is_empty() {
                continue;
            }
            let c = if monic {
                top.clone()
            } else {
                intpoly::div_exact(top, lc)?
            };
            for (j, dj) in d.rows.iter().enumerate() {
                if !dj.is_empty() {
                    r[k + j] = intpoly::sub(&r[k + j], &intpoly::mul(&c, dj));
                }
            }
            q[k] = c;
        }
        r.iter().all(|x| x.is_empty()).then(|| Self::from_rows(q))
    }

    /// Evaluates at `w = x`, a polynomial in `z`.
    pub fn eval_w(&self, x: &[BigInt]) -> IntPoly {
        let mut acc: IntPoly = Vec::new();
        for r in self.rows.iter().rev() {
            acc = intpoly::add(&intpoly::mul(&acc, x), r);
        }
        acc
    }

    /// `self(z, lc * w)` for a polynomial `lc` in `z`.
    pub fn scale_w(&self, lc: &[BigInt]) -> Self {
        let mut pow: IntPoly = vec![BigInt::one()];
        let mut rows = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            rows.push(intpoly::mul(r, &pow));
            pow = intpoly::mul(&pow, lc);
        }
        Self::from_rows(rows)
    }

    /// Coefficient 2-norm bound `ceil(||p||_2)`.
    pub fn norm2_ceil(&self) -> BigInt {
        let all: Vec<BigInt> = self.rows.iter().flatten().cloned().collect();
        intpoly::norm2_ceil(&all)
    }
}

impl fmt::Display for IntBiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .rows
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, r)| !r.is_empty())
            .map(|(i, r)| format!("({})*w^{i}", intpoly::to_zpoly(r)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_bipoly(max_w: usize, max_z: usize) -> impl Strategy<Value = IntBiPoly> {
        prop::collection::vec(prop::collection::vec(-1000i64..1000, 0..=max_z), 0..=max_w)
            .prop_map(|rows| IntBiPoly::from_rows(rows.iter().map(|r| intpoly::from_i64s(r)).collect()))
    }

    proptest! {
        #[test]
        fn kronecker_matches_schoolbook(a in arb_bipoly(10, 8), b in arb_bipoly(10, 8)) {
            prop_assert_eq!(a.kronecker_mul(&b), a.schoolbook_mul(&b));
        }

        #[test]
        fn division_inverts_product(a in arb_bipoly(5, 4), b in arb_bipoly(4, 3)) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
        }
    }

    #[test]
    fn basic_ops() {
        // (w + z)(w - z) = w^2 - z^2
        let a = IntBiPoly::from_terms(&[(1, 0, 1), (0, 1, 1)]);
        let b = IntBiPoly::from_terms(&[(1, 0, 1), (0, 1, -1)]);
        assert_eq!(a.mul(&b), IntBiPoly::from_terms(&[(2, 0, 1), (0, 2, -1)]));
        assert_eq!(
            a.shift_z(&BigInt::from(1)),
            IntBiPoly::from_terms(&[(1, 0, 1), (0, 1, 1), (0, 0, 1)])
        );
        let c = IntBiPoly::from_terms(&[(1, 1, 2), (0, 1, 4)]);
        assert_eq!(c.content_z(), intpoly::from_i64s(&[0, 2]));
        assert_eq!(c.primitive(), IntBiPoly::from_terms(&[(1, 0, 1), (0, 0, 2)]));
    }
}

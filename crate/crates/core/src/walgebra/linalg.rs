//! Exact linear algebra over Q(z) by fraction-free elimination over Q[z].

use crate::exact::{RatFunc, ZPoly};

fn lcm(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let g = a.gcd(b);
    (a * b).exact_div(&g).expect("gcd divides the product")
}

/// Multiplies a row by the lcm of its denominators; returns the row over Q[z]
/// and the multiplier.
fn clear_row(row: &[RatFunc]) -> (Vec<ZPoly>, ZPoly) {
    let l = row
        .iter()
        .filter(|c| !c.is_zero())
        .fold(ZPoly::one(), |acc, c| lcm(&acc, c.den()));
    let cleared = row
        .iter()
        .map(|c| {
            if c.is_zero() {
                ZPoly::zero()
            } else {
                &l.exact_div(c.den()).expect("lcm") * c.num()
            }
        })
        .collect();
    (cleared, l)
}

/// Bareiss elimination on the first `n` columns of `m`, carrying any extra
/// columns along. Returns the sign of the row permutation, or `None` if a
/// pivot column is zero.
fn bareiss(m: &mut [Vec<ZPoly>], n: usize) -> Option<bool> {
    let width = m.first().map_or(0, Vec::len);
    let mut negate = false;
    let mut prev = ZPoly::one();
    for k in 0..n {
        let p = (k..n)
            .filter(|&r| !m[r][k].is_zero())
            .min_by_key(|&r| m[r][k].degree())?;
        if p != k {
            m.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..width {
                let v = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = v.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = ZPoly::zero();
        }
        prev = m[k][k].clone();
    }
    Some(negate)
}

/// Determinant of a square matrix.
pub fn determinant(m: Vec<Vec<RatFunc>>) -> RatFunc {
    let n = m.len();
    if n == 0 {
        return RatFunc::one();
    }
    let mut scale = ZPoly::one();
    let mut rows = Vec::with_capacity(n);
    for row in &m {
        let (r, l) = clear_row(row);
        scale = &scale * &l;
        rows.push(r);
    }
    let Some(negate) = bareiss(&mut rows, n) else {
        return RatFunc::zero();
    };
    let det = RatFunc::new(rows[n - 1][n - 1].clone(), scale).expect("nonzero scale");
    if negate {
        -det
    } else {
        det
    }
}

/// Solves `m x = rhs`, or `None` if `m` is singular.
pub fn solve(m: Vec<Vec<RatFunc>>, rhs: Vec<RatFunc>) -> Option<Vec<RatFunc>> {
    let n = m.len();
    let mut rows: Vec<Vec<ZPoly>> = m
        .into_iter()
        .zip(rhs)
        .map(|(mut row, b)| {
            row.push(b);
            clear_row(&row).0
        })
        .collect();
    bareiss(&mut rows, n)?;
    // y = det * x is polynomial; back substitution divides exactly
    let det = rows[n - 1][n - 1].clone();
    let mut y = vec![ZPoly::zero(); n];
    for i in (0..n).rev() {
        let mut acc = &det * &rows[i][n];
        for j in i + 1..n {
            acc = &acc - &(&rows[i][j] * &y[j]);
        }
        y[i] = acc.exact_div(&rows[i][i]).expect("Cramer numerator is polynomial");
    }
    Some(
        y.into_iter()
            .map(|yi| RatFunc::new(yi, det.clone()).expect("nonzero determinant"))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        s.parse().unwrap()
    }

    #[test]
    fn small_systems() {
        let m = vec![vec![rf("z"), rf("1")], vec![rf("1/z"), rf("z")]];
        // z*z - 1*(1/z)
        assert_eq!(determinant(m.clone()), rf("(z^3 - 1)/z"));
        let x = solve(m.clone(), vec![rf("1"), rf("0")]).unwrap();
        for (row, b) in m.iter().zip([rf("1"), rf("0")]) {
            let lhs = &(&row[0] * &x[0]) + &(&row[1] * &x[1]);
            assert_eq!(lhs, b);
        }
        let sing = vec![vec![rf("z"), rf("1")], vec![rf("z^2"), rf("z")]];
        assert!(determinant(sing.clone()).is_zero());
        assert!(solve(sing, vec![rf("1"), rf("0")]).is_none());
    }
}

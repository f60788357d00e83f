//! Closed-form meromorphic solutions of `f(z+1) = R(z, f(z))` with
//! log-polar evaluators and explicit zero enumeration.

use std::f64::consts::{LN_2, PI, TAU};
use std::fmt;

use num_complex::Complex64;

use crate::walgebra::WRat;

/// `f = exp(logmag + i arg)`; zero has `logmag = -inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogVal {
    pub logmag: f64,
    pub arg: f64,
}

impl LogVal {
    pub fn from_complex(c: Complex64) -> Self {
        LogVal {
            logmag: c.norm().ln(),
            arg: c.arg(),
        }
    }

    /// Finite complex value; overflows for `logmag > ~709`.
    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.logmag.exp(), self.arg)
    }

    /// `f - a`, exact in the leading term when `|f|` is huge.
    pub fn sub(self, a: Complex64) -> LogVal {
        if a == Complex64::new(0.0, 0.0) {
            return self;
        }
        if self.logmag == f64::NEG_INFINITY || self.logmag < a.norm().ln() - 40.0 {
            return LogVal::from_complex(-a);
        }
        if self.logmag > 30.0 {
            let ratio = a * Complex64::from_polar((-self.logmag).exp(), -self.arg);
            let tail = LogVal::from_complex(Complex64::new(1.0, 0.0) - ratio);
            return LogVal {
                logmag: self.logmag + tail.logmag,
                arg: self.arg + tail.arg,
            };
        }
        LogVal::from_complex(self.to_complex() - a)
    }
}

/// A point of the Riemann sphere used as a target value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Target {
    Finite(Complex64),
    Infinity,
}

impl Target {
    pub fn real(x: f64) -> Self {
        Target::Finite(Complex64::new(x, 0.0))
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Infinity => write!(f, "inf"),
            Target::Finite(c) if c.im == 0.0 => write!(f, "{}", c.re),
            Target::Finite(c) => write!(f, "{}{:+}i", c.re, c.im),
        }
    }
}

impl std::str::FromStr for Target {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "oo") {
            return Ok(Target::Infinity);
        }
        t.parse::<f64>()
            .map(Target::real)
            .or_else(|_| t.parse::<Complex64>().map(Target::Finite))
            .map_err(|_| format!("cannot parse target {s:?}; expected a number or inf"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Kind {
    /// `exp(c 2^z)`, solving `f(z+1) = f^2`.
    ExpDoubling {
        c: f64,
    },
    /// `2 cos(c 2^z)`, solving `f(z+1) = f^2 - 2`.
    CosDoubling {
        c: f64,
    },
    /// `f(z) = z`, solving `f(z+1) = f^2 - z^2 + z + 1`.
    Identity,
    /// `e^z`.
    Exp,
    Constant(Complex64),
}

#[derive(Clone, Debug)]
pub struct SolutionHandle {
    pub name: String,
    /// The map `R` with `f(z+1) = R(z, f(z))`, when it has rational coefficients.
    pub equation: Option<WRat>,
    pub kind: Kind,
    /// Evaluate `f(z + shift)` instead of `f(z)`.
    pub shift: i64,
    pub oracle_enabled: bool,
}

fn two_pow(z: Complex64) -> Complex64 {
    (z * LN_2).exp()
}

fn map(s: &str) -> WRat {
    s.parse().expect("catalog equation parses")
}

impl SolutionHandle {
    fn new(name: String, equation: Option<WRat>, kind: Kind) -> Self {
        SolutionHandle {
            name,
            equation,
            kind,
            shift: 0,
            oracle_enabled: true,
        }
    }

    pub fn exp_doubling(c: f64) -> Self {
        Self::new(format!("exp({c}*2^z)"), Some(map("w^2")), Kind::ExpDoubling { c })
    }

    pub fn cos_doubling(c: f64) -> Self {
        Self::new(format!("2cos({c}*2^z)"), Some(map("w^2 - 2")), Kind::CosDoubling { c })
    }

    pub fn identity() -> Self {
        Self::new("z".into(), Some(map("w^2 - z^2 + z + 1")), Kind::Identity)
    }

    pub fn exp() -> Self {
        Self::new("exp(z)".into(), None, Kind::Exp)
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), Some(WRat::w()), Kind::Constant(Complex64::new(c, 0.0)))
    }

    /// Catalog lookup: `exp2`, `cos2`, `z`, `exp`, `const`, with an optional parameter.
    pub fn by_name(name: &str, param: Option<f64>) -> Option<Self> {
        let c = param.unwrap_or(1.0);
        Some(match name {
            "exp2" | "exp_doubling" => Self::exp_doubling(c),
            "cos2" | "cos_doubling" => Self::cos_doubling(c),
            "z" | "identity" => Self::identity(),
            "exp" => Self::exp(),
            "const" | "constant" => Self::constant(param.unwrap_or(2.0)),
            _ => return None,
        })
    }

    pub const NAMES: [&'static str; 5] = ["exp2", "cos2", "z", "exp", "const"];

    /// `z -> f(z + n)`; the equation becomes `R(z + n, w)`.
    pub fn shifted(&self, n: i64) -> Self {
        let mut s = self.clone();
        s.shift += n;
        s.name = format!("{}[z+{}]", self.name, s.shift);
        s.equation = self.equation.as_ref().map(|r| r.shift_z(n));
        s
    }

    pub fn without_oracle(&self) -> Self {
        let mut s = self.clone();
        s.oracle_enabled = false;
        s
    }

    /// `deg_w R`, if the equation is known.
    pub fn degree(&self) -> Option<usize> {
        self.equation.as_ref().map(|r| r.degree())
    }

    pub fn is_entire(&self) -> bool {
        true
    }

    pub fn eval(&self, z: Complex64) -> LogVal {
        let z = z + self.shift as f64;
        match self.kind {
            Kind::ExpDoubling { c } => {
                let t = two_pow(z) * c;
                LogVal {
                    logmag: t.re,
                    arg: t.im,
                }
            }
            Kind::CosDoubling { c } => {
                let u = two_pow(z) * c;
                let i = Complex64::i();
                let (base, eps) = if u.im >= 0.0 {
                    (-i * u, (i * u * 2.0).exp())
                } else {
                    (i * u, (-i * u * 2.0).exp())
                };
                let tail = (eps + 1.0).ln();
                LogVal {
                    logmag: base.re + tail.re,
                    arg: base.im + tail.im,
                }
            }
            Kind::Identity => LogVal::from_complex(z),
            Kind::Exp => LogVal {
                logmag: z.re,
                arg: z.im,
            },
            Kind::Constant(c) => LogVal::from_complex(c),
        }
    }

    /// Zeros of `f - a` (poles for `a = inf`) in `|z| <= r`, with multiplicity.
    /// `None` when no oracle covers the target or `f - a` vanishes identically.
    pub fn zeros(&self, a: Target, r: f64) -> Option<Vec<(Complex64, u32)>> {
        if !self.oracle_enabled {
            return None;
        }
        let a = match a {
            Target::Infinity => return Some(Vec::new()),
            Target::Finite(a) => a,
        };
        let s = self.shift as f64;
        let reach = r + s.abs();
        let raw = match self.kind {
            Kind::ExpDoubling { c } => {
                if a == Complex64::new(0.0, 0.0) {
                    Vec::new()
                } else {
                    let l = a.ln();
                    let kmax = ((c * 2f64.powf(reach) + l.norm()) / TAU).ceil() as i64 + 1;
                    let us = (-kmax..=kmax).map(|k| (l + Complex64::new(0.0, TAU * k as f64)) / c);
                    lift_two_pow(us.map(|u| (u, 1)), reach)
                }
            }
            Kind::CosDoubling { c } => {
                let alpha = (a / 2.0).acos();
                let double = alpha.sin().norm() < 1e-12;
                let kmax = ((c.abs() * 2f64.powf(reach) + alpha.norm()) / TAU).ceil() as i64 + 1;
                let mut us = Vec::new();
                for k in -kmax..=kmax {
                    let base = Complex64::new(TAU * k as f64, 0.0);
                    if double {
                        us.push(((alpha + base) / c, 2));
                    } else {
                        us.push(((alpha + base) / c, 1));
                        us.push(((-alpha + base) / c, 1));
                    }
                }
                lift_two_pow(us.into_iter(), reach)
            }
            Kind::Identity => vec![(a, 1)],
            Kind::Exp => {
                if a == Complex64::new(0.0, 0.0) {
                    Vec::new()
                } else {
                    let l = a.ln();
                    let kmax = (reach / TAU).ceil() as i64 + 1;
                    (-kmax..=kmax)
                        .map(|k| (l + Complex64::new(0.0, TAU * k as f64), 1))
                        .collect()
                }
            }
            Kind::Constant(c) => {
                if (c - a).norm() == 0.0 {
                    return None;
                }
                Vec::new()
            }
        };
        Some(
            raw.into_iter()
                .map(|(z, m)| (z - s, m))
                .filter(|(z, _)| z.norm() <= r)
                .collect(),
        )
    }
}

/// All `z` with `2^z = u` and `|z| <= r`.
fn lift_two_pow(us: impl Iterator<Item = (Complex64, u32)>, r: f64) -> Vec<(Complex64, u32)> {
    let mut out = Vec::new();
    for (u, m) in us {
        if u.norm() == 0.0 {
            continue;
        }
        let re = u.norm().ln() / LN_2;
        if re.abs() > r {
            continue;
        }
        let span = (r * r - re * re).sqrt() * LN_2;
        let theta = u.arg();
        let jlo = ((-span - theta) / TAU).ceil() as i64;
        let jhi = ((span - theta) / TAU).floor() as i64;
        for j in jlo..=jhi {
            let z = Complex64::new(re, (theta + TAU * j as f64) / LN_2);
            if z.norm() <= r {
                out.push((z, m));
            }
        }
    }
    out
}

/// A complex polynomial (ascending coefficients) at a log-polar point; for
/// large `|f|` as `lc f^d sum (c_i/lc) f^(i-d)`.
pub fn log_eval_poly(coeffs: &[Complex64], v: LogVal) -> LogVal {
    let d = coeffs.len() - 1;
    if v.logmag > 30.0 {
        let inv = Complex64::from_polar((-v.logmag).exp(), -v.arg);
        let lc = coeffs[d];
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter() {
            acc = acc * inv + c / lc;
        }
        let tail = LogVal::from_complex(acc);
        let head = LogVal::from_complex(lc);
        return LogVal {
            logmag: head.logmag + d as f64 * v.logmag + tail.logmag,
            arg: head.arg + d as f64 * v.arg + tail.arg,
        };
    }
    let x = v.to_complex();
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    LogVal::from_complex(acc)
}

/// Roots of a complex polynomial (ascending coefficients) by simultaneous
/// Weierstrass iteration.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    let lc = coeffs[d];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lc).collect();
    let eval = |x: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |a, c| a * x + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    roots
}

/// `R(z, f)` for a catalog equation, evaluated in log-polar form.
pub fn log_eval_map(r: &WRat, z: Complex64, v: LogVal) -> LogVal {
    let coeffs =
        |p: &crate::walgebra::WPoly| -> Vec<Complex64> { p.coeffs().iter().map(|c| eval_ratfunc(c, z)).collect() };
    let n = log_eval_poly(&coeffs(r.num()), v);
    let d = log_eval_poly(&coeffs(r.den()), v);
    LogVal {
        logmag: n.logmag - d.logmag,
        arg: n.arg - d.arg,
    }
}

pub fn eval_ratfunc(c: &crate::exact::RatFunc, z: Complex64) -> Complex64 {
    let horner = |p: &crate::exact::ZPoly| {
        p.coeffs().iter().rev().fold(Complex64::new(0.0, 0.0), |a, q| {
            a * z + crate::exact::rational::to_f64(q)
        })
    };
    horner(c.num()) / horner(c.den())
}

/// `x mod 2 pi` into `(-pi, pi]`.
pub fn wrap_angle(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn functional_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for f in [
            SolutionHandle::exp_doubling(1.0),
            SolutionHandle::cos_doubling(1.0),
            SolutionHandle::cos_doubling(0.3),
            SolutionHandle::identity(),
        ] {
            let r = f.equation.clone().unwrap();
            for _ in 0..100 {
                let z = loop {
                    let z = Complex64::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0));
                    if z.norm() <= 6.0 {
                        break z;
                    }
                };
                let lhs = f.eval(z + 1.0);
                let rhs = log_eval_map(&r, z, f.eval(z));
                let tol = 1e-8 * lhs.logmag.abs().max(1.0);
                assert!(
                    (lhs.logmag - rhs.logmag).abs() < tol,
                    "{} at {z}: {lhs:?} vs {rhs:?}",
                    f.name
                );
            }
        }
    }

    #[test]
    fn oracle_zeros_are_zeros() {
        for (f, a) in [
            (SolutionHandle::cos_doubling(1.0), 0.0),
            (SolutionHandle::cos_doubling(1.0), 2.0),
            (SolutionHandle::cos_doubling(1.0), 1.0),
            (SolutionHandle::exp_doubling(1.0), 3.0),
            (SolutionHandle::exp(), -1.0),
        ] {
            let zs = f.zeros(Target::real(a), 4.0).unwrap();
            assert!(!zs.is_empty());
            for (z, _) in zs {
                let v = f.eval(z).sub(Complex64::new(a, 0.0));
                assert!(
                    v.logmag < -15.0 + f.eval(z).logmag.max(0.0),
                    "{} - {a} at {z}: {v:?}",
                    f.name
                );
            }
        }
        assert!(SolutionHandle::exp_doubling(1.0)
            .zeros(Target::real(0.0), 5.0)
            .unwrap()
            .is_empty());
        let zs = SolutionHandle::cos_doubling(1.0).zeros(Target::real(2.0), 3.0).unwrap();
        assert!(zs.iter().all(|(_, m)| *m == 2));
    }

    #[test]
    fn roots_of_small_polys() {
        let c = |x: f64| Complex64::new(x, 0.0);
        let mut r = poly_roots(&[c(0.0), c(-1.0), c(1.0)]);
        r.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((r[0] - c(0.0)).norm() < 1e-12 && (r[1] - c(1.0)).norm() < 1e-12);
    }

    #[test]
    fn large_argument_polynomial() {
        let v = LogVal {
            logmag: 100.0,
            arg: 0.3,
        };
        let c = |x: f64| Complex64::new(x, 0.0);
        let p = log_eval_poly(&[c(-2.0), c(0.0), c(1.0)], v);
        assert!((p.logmag - 200.0).abs() < 1e-12);
        assert!((wrap_angle(p.arg) - 0.6).abs() < 1e-12);
    }
}

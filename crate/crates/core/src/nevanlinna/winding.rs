//! Zero location by the argument principle on a nested box cover.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::catalog::{wrap_angle, SolutionHandle};
use super::NevError;

const MAX_EDGE_DEPTH: u32 = 40;
const EDGE_SEGMENTS: usize = 8;

struct Counter<'a> {
    f: &'a SolutionHandle,
    a: Complex64,
    min_size: f64,
}

impl Counter<'_> {
    fn phase(&self, z: Complex64) -> Result<f64, NevError> {
        let v = self.f.eval(z).sub(self.a);
        if v.logmag < -30.0 || !v.arg.is_finite() {
            return Err(NevError::WindingUnstable { at: z.norm() });
        }
        Ok(v.arg)
    }

    fn edge(&self, p: Complex64, q: Complex64, fp: f64, fq: f64, depth: u32) -> Result<f64, NevError> {
        let d = wrap_angle(fq - fp);
        if d.abs() <= PI / 4.0 {
            return Ok(d);
        }
        if depth >= MAX_EDGE_DEPTH {
            return Err(NevError::WindingUnstable { at: p.norm() });
        }
        let m = (p + q) / 2.0;
        let fm = self.phase(m)?;
        Ok(self.edge(p, m, fp, fm, depth + 1)? + self.edge(m, q, fm, fq, depth + 1)?)
    }

    fn winding(&self, lo: Complex64, size: f64) -> Result<i64, NevError> {
        let corners = [
            lo,
            lo + Complex64::new(size, 0.0),
            lo + Complex64::new(size, size),
            lo + Complex64::new(0.0, size),
        ];
        let mut total = 0.0;
        for k in 0..4 {
            let (p, q) = (corners[k], corners[(k + 1) % 4]);
            let mut prev = p;
            let mut fprev = self.phase(p)?;
            for s in 1..=EDGE_SEGMENTS {
                let next = p + (q - p) * (s as f64 / EDGE_SEGMENTS as f64);
                let fnext = self.phase(next)?;
                total += self.edge(prev, next, fprev, fnext, 0)?;
                prev = next;
                fprev = fnext;
            }
        }
        let n = total / TAU;
        if (n - n.round()).abs() > 0.1 {
            return Err(NevError::WindingUnstable { at: lo.norm() });
        }
        Ok(n.round() as i64)
    }

    fn refine(&self, lo: Complex64, size: f64, out: &mut Vec<(Complex64, u32)>) -> Result<(), NevError> {
        let n = self.winding(lo, size)?;
        if n == 0 {
            return Ok(());
        }
        if n < 0 {
            return Err(NevError::WindingUnstable { at: lo.norm() });
        }
        if size <= self.min_size {
            out.push((lo + Complex64::new(size / 2.0, size / 2.0), n as u32));
            return Ok(());
        }
        let h = size / 2.0;
        for (dx, dy) in [(0.0, 0.0), (h, 0.0), (0.0, h), (h, h)] {
            self.refine(lo + Complex64::new(dx, dy), h, out)?;
        }
        Ok(())
    }
}

/// Zeros of `f - a` in `|z| <= r`, located to within `min_size`, with
/// multiplicities from the winding number of the smallest enclosing box.
pub fn zeros_by_winding(
    f: &SolutionHandle,
    a: Complex64,
    r: f64,
    min_size: f64,
) -> Result<Vec<(Complex64, u32)>, NevError> {
    let counter = Counter { f, a, min_size };
    let cells = (2.0 * r).ceil().max(4.0) as usize;
    let side = 2.02 * r / cells as f64;
    let origin = Complex64::new(-1.01 * r + 0.003_71 * r, -1.01 * r + 0.002_93 * r);
    let mut out = Vec::new();
    for i in 0..cells {
        for j in 0..cells {
            let lo = origin + Complex64::new(i as f64 * side, j as f64 * side);
            counter.refine(lo, side, &mut out)?;
        }
    }
    out.retain(|(z, _)| z.norm() <= r);
    Ok(out)
}

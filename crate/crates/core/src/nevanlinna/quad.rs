//! Periodic trapezoid sums with node doubling and compensated accumulation.

use std::f64::consts::TAU;

/// Neumaier's compensated sum, accumulated in call order.
#[derive(Clone, Copy, Debug, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

pub fn neumaier_sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Neumaier::default();
    for x in xs {
        acc.add(x);
    }
    acc.value()
}

/// Result of a refined circle average.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleMean {
    pub value: f64,
    pub nodes: usize,
    /// Change at the last doubling.
    pub change: f64,
    pub converged: bool,
}

/// `(1/2pi) int_0^{2pi} g(theta) dtheta` by the trapezoid rule on `nodes`
/// points, doubled until two levels agree within `tolerance` or
/// `refine_depth` doublings are spent.
pub fn circle_mean(g: impl Fn(f64) -> f64, nodes: usize, refine_depth: u32, tolerance: f64) -> CircleMean {
    let mut acc = Neumaier::default();
    for j in 0..nodes {
        acc.add(g(TAU * j as f64 / nodes as f64));
    }
    let mut n = nodes;
    let mut value = acc.value() / n as f64;
    let mut change = f64::INFINITY;
    for _ in 0..refine_depth {
        let h = TAU / (2 * n) as f64;
        for j in 0..n {
            acc.add(g(h * (2 * j + 1) as f64));
        }
        n *= 2;
        let next = acc.value() / n as f64;
        change = (next - value).abs();
        value = next;
        if change < tolerance {
            return CircleMean {
                value,
                nodes: n,
                change,
                converged: true,
            };
        }
    }
    CircleMean {
        value,
        nodes: n,
        change,
        converged: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(neumaier_sum(xs), 2.0);
    }

    #[test]
    fn smooth_mean() {
        let m = circle_mean(|t| t.cos().exp(), 64, 6, 1e-14);
        // mean of e^{cos t} is I_0(1)
        assert!((m.value - 1.266_065_877_752_008_4).abs() < 1e-13);
        assert!(m.converged);
    }
}

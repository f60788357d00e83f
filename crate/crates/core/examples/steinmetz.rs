//! m_f + m_{1/H(f)} against 3 T_f along a radius grid.

use diffnev::nevanlinna::{steinmetz_check, QuadratureConfig, SolutionHandle};
use diffnev::walgebra::WPoly;

fn main() {
    let cfg = QuadratureConfig::default();
    let radii: Vec<f64> = (2..=16).map(|i| f64::from(i) / 2.0).collect();
    let runs = [
        (SolutionHandle::exp(), "w"),
        (SolutionHandle::constant(5.0), "w - 1"),
        (SolutionHandle::cos_doubling(1.0), "w^2 - w"),
    ];
    for (f, h) in runs {
        let h: WPoly = h.parse().unwrap();
        let rep = steinmetz_check(&f, &h, &radii, &cfg).unwrap();
        println!(
            "{}, H = {}: holds on {:.0}% ({:?})",
            rep.function,
            rep.h,
            100.0 * rep.fraction,
            rep.verdict
        );
        for row in rep.rows.iter().step_by(4) {
            println!("  r = {}: {:.4} <= {:.4}", row.r, row.lhs, row.rhs);
        }
    }
}

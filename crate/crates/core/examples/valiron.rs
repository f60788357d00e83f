//! T of the shifted solution against d times T of the solution.

use diffnev::nevanlinna::{valiron_check, valiron_trend, QuadratureConfig, SolutionHandle};

fn main() {
    let cfg = QuadratureConfig::default();
    let radii: Vec<f64> = (1..=8).map(f64::from).collect();
    for f in [SolutionHandle::exp_doubling(1.0), SolutionHandle::cos_doubling(1.0)] {
        let rows = valiron_check(&f, &radii, &cfg).unwrap();
        println!("{} (trend {:?})", f.name, valiron_trend(&rows));
        for row in &rows {
            println!(
                "  r = {}: T_shift = {:.6}, dT = {:.6}, ratio = {:.4}",
                row.r, row.t_shift, row.d_t, row.ratio
            );
        }
    }
}

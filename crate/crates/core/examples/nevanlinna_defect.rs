//! Proximity, counting and defect tables for catalog solutions.

use diffnev::nevanlinna::{characteristic, defect_experiment, DefectOptions, QuadratureConfig, SolutionHandle, Target};

fn main() {
    let cfg = QuadratureConfig::default();
    let e = SolutionHandle::exp();
    for r in [1.0, 5.0, 10.0] {
        let row = characteristic(&e, r, &cfg).unwrap();
        println!(
            "{}: r = {r}, T = {:.8}, r/pi = {:.8}",
            e.name,
            row.t,
            r / std::f64::consts::PI
        );
    }

    let radii = [2.0, 3.0, 4.0, 5.0, 6.0];
    let cos2 = SolutionHandle::cos_doubling(1.0);
    let rep = defect_experiment(&cos2, Target::real(0.0), &radii, &cfg, &DefectOptions::default()).unwrap();
    println!("{} at a = 0 (verdict {:?})", rep.function, rep.verdict);
    println!("r  m  N  ratio");
    for row in &rep.rows {
        println!("{}  {:.6e}  {:.6}  {:.6e}", row.r, row.m, row.n, row.ratio);
    }

    let exp2 = SolutionHandle::exp_doubling(1.0);
    let opts = DefectOptions {
        allow_exceptional: true,
        ..DefectOptions::default()
    };
    let rep = defect_experiment(&exp2, Target::real(0.0), &radii, &cfg, &opts).unwrap();
    let ratios: Vec<f64> = rep.rows.iter().map(|r| r.ratio).collect();
    println!("{} at the omitted value 0: ratios {ratios:?}", rep.function);
}

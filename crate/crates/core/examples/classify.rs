//! Normal forms of shift maps and exceptional targets.

use diffnev::classifier::{classify, is_shift_exceptional};
use diffnev::composition::exceptional_cycle_data;
use diffnev::exact::rat;
use diffnev::walgebra::WRat;

fn main() {
    for m in ["w^2+z", "z/(w-1)^2+1", "(w^2+z)/w"] {
        let r: WRat = m.parse().unwrap();
        let nf = classify(&r).unwrap();
        println!("{m}: {}", serde_json::to_string(&nf).unwrap());
        if let Some(back) = nf.reconstruct() {
            println!("  reconstructed: {back}");
        }
    }

    for (m, a) in [("w^2", rat(0, 1)), ("w^2", rat(1, 1)), ("w^2-2", rat(2, 1))] {
        let r: WRat = m.parse().unwrap();
        let v = is_shift_exceptional(&r, &a).unwrap();
        println!(
            "R = {m}, a = {a}: exceptional {} (fixed {}, multiplicity {} of {})",
            v.is_exceptional, v.fixed, v.local_multiplicity, v.full_degree
        );
    }

    let c = exceptional_cycle_data(&"(w^2+z)/w".parse().unwrap(), 8);
    println!("cycle of infinity: m = {:?}, E = {:?}", c.m, c.e);
}

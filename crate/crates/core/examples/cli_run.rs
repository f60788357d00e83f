//! Driving the command-line interface in process.

use diffnev::cli::run;

fn main() {
    let runs: [&[&str]; 4] = [
        &["compose", "--map", "(w^2+z)/w", "--k", "2"],
        &["spread", "--map", "(w^2+z)/w", "--kmax", "4"],
        &["exceptional", "--map", "w^2", "--target", "0"],
        &["defect", "--function", "cos2", "--target", "0", "--r-grid", "2:4:1"],
    ];
    for args in runs {
        let o = run(std::iter::once("diffnev").chain(args.iter().copied()));
        println!("$ diffnev {} (exit {})", args.join(" "), o.code);
        print!("{}", o.stdout);
        eprint!("{}", o.stderr);
    }
}

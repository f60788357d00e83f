//! Acceptance gate. Runs each criterion in order, prints one PASS/FAIL line
//! per criterion and exits nonzero if any criterion fails.

use std::f64::consts::{FRAC_PI_2, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;

use diffnev::classifier::{classify, is_shift_exceptional, NormalForm};
use diffnev::cli::{manifest_path, run};
use diffnev::composition::{compose_chain, multiplicity_profile, spread_sequence, CompositionError};
use diffnev::exact::{rat, RatFunc, Rational};
use diffnev::local::verify_order_inequality;
use diffnev::nevanlinna::{
    defect_experiment, proximity, steinmetz_check, valiron_check, DefectOptions, QuadratureConfig, SolutionHandle,
    Target,
};
use diffnev::suites::{bezout_suite, local_suite};
use diffnev::walgebra::{resultant, WPoly, WRat};

const SEED: u64 = 1;
const SUITE_COUNT: usize = 500;

const BEZOUT_BUDGET: Duration = Duration::from_secs(30);
const RESULTANT_BUDGET: Duration = Duration::from_secs(1);
const DEGREE_BUDGET: Duration = Duration::from_secs(120);
const SPREAD_BUDGET: Duration = Duration::from_secs(300);
const CLASSIFY_BUDGET: Duration = Duration::from_secs(10);
const LOCAL_BUDGET: Duration = Duration::from_secs(60);
const CALIBRATION_BUDGET: Duration = Duration::from_secs(10);
const DEFECT_BUDGET: Duration = Duration::from_secs(600);
const VALIRON_BUDGET: Duration = Duration::from_secs(300);
const STEINMETZ_BUDGET: Duration = Duration::from_secs(300);

const MAX_DEPTH: usize = 5;
const SPREAD_DEPTH: usize = 6;
const CALIBRATION_RTOL: f64 = 1e-4;
const ORACLE_RTOL: f64 = 0.02;
const ORACLE_ATOL: f64 = 1e-12;
const ORACLE_NODES: usize = 1 << 20;
const CONTRAST_BAND: f64 = 0.02;
const VALIRON_LOW: f64 = 0.98;
const VALIRON_HIGH: f64 = 1.02;
const STEINMETZ_MIN_FRACTION: f64 = 0.9;

const TEST_MAPS: [&str; 4] = ["(w^2+z)/w", "z/(w-1)^2+1", "w^2+z", "(w^3+z*w+1)/(w-z)"];

fn defect_cfg() -> QuadratureConfig {
    QuadratureConfig {
        nodes: 4096,
        refine_depth: 12,
        tolerance: 1e-10,
    }
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + step * i as f64).collect()
}

fn wrat(s: &str) -> WRat {
    s.parse().unwrap()
}

fn wpoly(s: &str) -> WPoly {
    s.parse().unwrap()
}

fn rf(s: &str) -> RatFunc {
    s.parse().unwrap()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn bezout_criterion() -> Outcome {
    let s = bezout_suite(SEED, SUITE_COUNT);
    let planted = s.count - SUITE_COUNT;
    let pass = s.all_passed() && planted > 0;
    outcome(
        pass,
        format!(
            "{}/{} checks ({SUITE_COUNT} coprime, {planted} planted), first failure {:?}",
            s.passed,
            s.count,
            s.failures.first()
        ),
    )
}

fn resultant_criterion() -> Outcome {
    let mut bad = Vec::new();
    if resultant(&wpoly("w^2"), &wpoly("w - 1")) != RatFunc::one() {
        bad.push("res(T^2, T-1)".to_string());
    }
    for (a, b) in [("0", "1"), ("z", "1/(z+1)"), ("(z^2-1)/z", "3*z"), ("1/2", "-5/3")] {
        let (a, b) = (rf(a), rf(b));
        let p = &WPoly::linear(&a);
        let q = &WPoly::linear(&b);
        if resultant(p, q) != &a - &b {
            bad.push(format!("res(T-({a}), T-({b}))"));
        }
    }
    if !resultant(&wpoly("w^2 - 1"), &wpoly("w - 1")).is_zero() {
        bad.push("res(T^2-1, T-1)".into());
    }
    outcome(bad.is_empty(), format!("mismatches {bad:?}"))
}

fn degree_criterion() -> Outcome {
    let mut bad = Vec::new();
    for m in TEST_MAPS {
        let r = wrat(m);
        let d = r.degree();
        for k in 1..=MAX_DEPTH {
            let c = compose_chain(&r, k);
            if c.degree() != d.pow(k as u32) || !c.is_lowest_terms() {
                bad.push(format!("{m} k={k} deg={}", c.degree()));
            }
        }
    }
    let composite = matches!(
        spread_sequence(&wrat("z/(w-1)^2+1"), 2),
        Err(CompositionError::PolynomialComposite)
    );
    let polynomial = wrat("w^2+z").is_polynomial();
    if !composite {
        bad.push("z/(w-1)^2+1 not flagged composite".into());
    }
    if !polynomial {
        bad.push("w^2+z not flagged polynomial".into());
    }
    outcome(
        bad.is_empty(),
        format!("{} maps to depth {MAX_DEPTH}, failures {bad:?}", TEST_MAPS.len()),
    )
}

fn spread_criterion() -> Outcome {
    let rows = match spread_sequence(&wrat("(w^2+z)/w"), SPREAD_DEPTH) {
        Ok(rows) => rows,
        Err(e) => return outcome(false, e.to_string()),
    };
    let ratios: Vec<Rational> = rows.iter().map(|r| r.ratio.clone()).collect();
    let head = ratios.len() == SPREAD_DEPTH && ratios[0] == rat(1, 2) && ratios[1] == rat(1, 4);
    let decays = ratios[SPREAD_DEPTH - 1] < ratios[0];
    let mut rh_bad = Vec::new();
    for m in TEST_MAPS {
        let r = wrat(m);
        let p = multiplicity_profile(&r, 1);
        if p.fiber_ramification() > 2 * r.degree() as u64 - 2 {
            rh_bad.push(m);
        }
    }
    let shown: Vec<String> = ratios.iter().map(|q| q.to_string()).collect();
    outcome(
        head && decays && rh_bad.is_empty(),
        format!(
            "ratios [{}], ramification bound violated by {rh_bad:?}",
            shown.join(", ")
        ),
    )
}

fn classify_criterion() -> Outcome {
    let mut bad = Vec::new();
    if classify(&wrat("w^2+z")) != Ok(NormalForm::Polynomial) {
        bad.push("w^2+z".to_string());
    }
    let inv = wrat("z/(w-1)^2+1");
    let expected = NormalForm::InversePower {
        a: rf("z"),
        b: rf("1"),
        d: 2,
    };
    match classify(&inv) {
        Ok(nf) if nf == expected && nf.reconstruct().as_ref() == Some(&inv) => {}
        other => bad.push(format!("z/(w-1)^2+1 gave {other:?}")),
    }
    if classify(&wrat("(w^2+z)/w")) != Ok(NormalForm::Generic) {
        bad.push("(w^2+z)/w".into());
    }
    for (m, a, want) in [
        ("w^2", rat(0, 1), true),
        ("w^2", rat(1, 1), false),
        ("w^2-2", rat(2, 1), false),
    ] {
        match is_shift_exceptional(&wrat(m), &a) {
            Ok(v) if v.is_exceptional == want => {}
            other => bad.push(format!("exceptional({m}, {a}) gave {other:?}")),
        }
    }
    outcome(bad.is_empty(), format!("mismatches {bad:?}"))
}

fn local_criterion() -> Outcome {
    let s = local_suite(SEED, SUITE_COUNT);
    let zero = rat(0, 1);
    let hand = [("w^2", "1", "1/z", 2), ("w^2", "w - 1", "z + 1", 1)];
    let mut bad = Vec::new();
    for (p, q, f, want) in hand {
        match verify_order_inequality(&wpoly(p), &wpoly(q), &rf(f), &zero) {
            Ok(c) if c.lhs == want && c.rhs == rat(want, 1) && c.holds => {}
            other => bad.push(format!("P={p} Q={q} f={f}: {other:?}")),
        }
    }
    outcome(
        s.all_passed() && bad.is_empty(),
        format!(
            "{}/{} tuples, regimes {:?}, hand instances failing {bad:?}",
            s.passed, s.count, s.regimes
        ),
    )
}

fn calibration_criterion() -> Outcome {
    let f = SolutionHandle::exp();
    let cfg = QuadratureConfig::default();
    let mut worst: f64 = 0.0;
    for r in [1.0, 5.0, 10.0] {
        match proximity(&f, r, Target::Infinity, &cfg) {
            Ok(m) => worst = worst.max((m - r / PI).abs() / (r / PI)),
            Err(e) => return outcome(false, format!("r={r}: {e}")),
        }
    }
    outcome(
        worst < CALIBRATION_RTOL,
        format!("max relative error {worst:.3e} (bound {CALIBRATION_RTOL:e})"),
    )
}

/// Zeros of `2 cos(2^z)` in `|z| <= r`: `2^z = pi/2 + pi k`, every branch of the logarithm.
fn cos2_zeros(r: f64) -> Vec<Complex64> {
    let ln2 = 2f64.ln();
    let reach = r * ln2;
    let kmax = (2f64.powf(r) / PI).ceil() as i64 + 1;
    let jmax = (reach / (2.0 * PI)).ceil() as i64 + 1;
    let mut zeros = Vec::new();
    for k in -kmax..=kmax {
        let u = FRAC_PI_2 + PI * k as f64;
        let arg = if u > 0.0 { 0.0 } else { PI };
        for j in -jmax..=jmax {
            let z = Complex64::new(u.abs().ln(), arg + 2.0 * PI * j as f64) / ln2;
            if z.norm() <= r {
                zeros.push(z);
            }
        }
    }
    zeros
}

/// `(m, N)` for `2 cos(2^z)` at target 0: direct midpoint rule plus explicit zero sum.
fn cos2_oracle(r: f64) -> (f64, f64) {
    let n: f64 = cos2_zeros(r).iter().map(|z| (r / z.norm()).ln()).sum();
    let ln2 = 2f64.ln();
    let h = 2.0 * PI / ORACLE_NODES as f64;
    let m = (0..ORACLE_NODES)
        .map(|i| {
            let z = Complex64::from_polar(r, (i as f64 + 0.5) * h);
            let v = ((z * ln2).exp().cos() * 2.0).norm();
            if v < 1.0 {
                -v.ln()
            } else {
                0.0
            }
        })
        .sum::<f64>()
        / ORACLE_NODES as f64;
    (m, n)
}

fn close(lib: f64, oracle: f64) -> bool {
    (lib - oracle).abs() <= ORACLE_RTOL * oracle.abs() + ORACLE_ATOL
}

fn defect_criterion() -> Outcome {
    let cfg = defect_cfg();
    let radii = grid(2.0, 6.0, 1.0);
    let report = match defect_experiment(
        &SolutionHandle::cos_doubling(1.0),
        Target::real(0.0),
        &radii,
        &cfg,
        &DefectOptions::default(),
    ) {
        Ok(rep) => rep,
        Err(e) => return outcome(false, e.to_string()),
    };
    let mut mismatches = Vec::new();
    for row in &report.rows {
        let (m, n) = cos2_oracle(row.r);
        let t = m + n;
        let ratio = if t > 0.0 { m / t } else { 1.0 };
        if !(close(row.m, m) && close(row.n, n) && close(row.t, t) && close(row.ratio, ratio)) {
            mismatches.push(format!(
                "r={}: lib (m {}, N {}, T {}) oracle (m {m}, N {n}, T {t})",
                row.r, row.m, row.n, row.t
            ));
        }
    }
    let first = report.rows.first().expect("rows").ratio;
    let last = report.rows.last().expect("rows").ratio;
    let decreasing = last < first;

    let contrast = defect_experiment(
        &SolutionHandle::exp_doubling(1.0),
        Target::real(0.0),
        &radii,
        &cfg,
        &DefectOptions {
            allow_exceptional: true,
            ..DefectOptions::default()
        },
    );
    let contrast_ok = match &contrast {
        Ok(rep) => rep.rows.iter().all(|r| (r.ratio - 1.0).abs() <= CONTRAST_BAND),
        Err(_) => false,
    };
    let contrast_ratios: Vec<f64> = contrast
        .map(|rep| rep.rows.iter().map(|r| r.ratio).collect())
        .unwrap_or_default();
    let table: Vec<String> = report
        .rows
        .iter()
        .map(|r| format!("r={} m={:.6e} N={:.6} ratio={:.6e}", r.r, r.m, r.n, r.ratio))
        .collect();
    outcome(
        decreasing && mismatches.is_empty() && contrast_ok,
        format!(
            "ratio(r=6) < ratio(r=2): {decreasing} ({last:e} vs {first:e}); oracle agreement: {} {mismatches:?}; \
             contrast within {CONTRAST_BAND}: {contrast_ok} {contrast_ratios:?}; table [{}]",
            mismatches.is_empty(),
            table.join("; ")
        ),
    )
}

fn valiron_criterion() -> Outcome {
    let cfg = QuadratureConfig::default();
    let exp_rows = match valiron_check(&SolutionHandle::exp_doubling(1.0), &grid(3.0, 6.0, 1.0), &cfg) {
        Ok(rows) => rows,
        Err(e) => return outcome(false, e.to_string()),
    };
    let exp_ok = exp_rows.iter().all(|r| (VALIRON_LOW..=VALIRON_HIGH).contains(&r.ratio));
    let cos_rows = match valiron_check(&SolutionHandle::cos_doubling(1.0), &grid(1.0, 8.0, 1.0), &cfg) {
        Ok(rows) => rows,
        Err(e) => return outcome(false, e.to_string()),
    };
    let dev: Vec<f64> = cos_rows.iter().map(|r| (r.ratio - 1.0).abs()).collect();
    let shrinks = dev.windows(2).all(|w| w[1] <= w[0]) && dev.last() < dev.first();
    let exp_ratios: Vec<String> = exp_rows.iter().map(|r| format!("{:.6}", r.ratio)).collect();
    let cos_ratios: Vec<String> = cos_rows.iter().map(|r| format!("{:.4}", r.ratio)).collect();
    outcome(
        exp_ok && shrinks,
        format!(
            "exp2 ratios [{}], cos2 ratios [{}]",
            exp_ratios.join(", "),
            cos_ratios.join(", ")
        ),
    )
}

fn steinmetz_criterion() -> Outcome {
    let cfg = QuadratureConfig::default();
    let radii = grid(1.0, 8.0, 0.5);
    let runs = [
        (SolutionHandle::exp(), "w"),
        (SolutionHandle::constant(5.0), "w - 1"),
        (SolutionHandle::cos_doubling(1.0), "w^2 - w"),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (f, h) in runs {
        match steinmetz_check(&f, &wpoly(h), &radii, &cfg) {
            Ok(rep) => {
                pass &= rep.fraction >= STEINMETZ_MIN_FRACTION;
                parts.push(format!("{} H={h}: {:.3}", rep.function, rep.fraction));
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{} H={h}: {e}", f.name));
            }
        }
    }
    outcome(pass, format!("holding fractions [{}]", parts.join(", ")))
}

fn determinism_criterion() -> Outcome {
    let dir = std::env::temp_dir().join(format!("diffnev-acceptance-{}", std::process::id()));
    if let Err(e) = std::fs::create_dir_all(&dir) {
        return outcome(false, e.to_string());
    }
    let runs: [&[&str]; 10] = [
        &["bezout", "--seed", "1", "--count", "100"],
        &["bezout", "--p", "w^2", "--q", "w - 1"],
        &["compose", "--map", "(w^3+z*w+1)/(w-z)", "--k", "3"],
        &["spread", "--map", "(w^2+z)/w", "--kmax", "6"],
        &["classify", "--map", "z/(w-1)^2+1"],
        &["localcheck", "--seed", "1", "--count", "500"],
        &[
            "nevanlinna",
            "--function",
            "exp",
            "--target",
            "inf",
            "--r-grid",
            "1:10:1",
        ],
        &[
            "defect",
            "--function",
            "cos2",
            "--target",
            "0",
            "--r-grid",
            "2:6:1",
            "--nodes",
            "4096",
            "--tolerance",
            "1e-10",
        ],
        &["valiron", "--function", "exp2", "--r-grid", "3:6:1"],
        &[
            "steinmetz",
            "--function",
            "cos2",
            "--h",
            "w^2 - w",
            "--r-grid",
            "1:8:0.5",
        ],
    ];
    let mut bad = Vec::new();
    for (i, args) in runs.iter().enumerate() {
        let out = dir.join(format!("run{i}.out"));
        let out_s = out.to_str().expect("utf-8 temp path");
        let mut seen = Vec::new();
        for _ in 0..2 {
            let argv = std::iter::once("diffnev")
                .chain(args.iter().copied())
                .chain(["--out", out_s]);
            let o = run(argv);
            let files = (std::fs::read(&out).ok(), std::fs::read(manifest_path(&out)).ok());
            seen.push((o.code, o.stdout, files));
        }
        if seen[0] != seen[1] || seen[0].0 > 1 || seen[0].2 .0.is_none() {
            bad.push(format!("{args:?} (exit {})", seen[0].0));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    outcome(
        bad.is_empty(),
        format!("{} runs repeated, differing {bad:?}", runs.len()),
    )
}

type Criterion = (usize, &'static str, Option<Duration>, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "bezout suite", Some(BEZOUT_BUDGET), bezout_criterion),
        (2, "resultant oracle", Some(RESULTANT_BUDGET), resultant_criterion),
        (3, "composition degree law", Some(DEGREE_BUDGET), degree_criterion),
        (4, "spread decay", Some(SPREAD_BUDGET), spread_criterion),
        (5, "classifier dichotomy", Some(CLASSIFY_BUDGET), classify_criterion),
        (6, "local inequality suite", Some(LOCAL_BUDGET), local_criterion),
        (
            7,
            "quadrature calibration",
            Some(CALIBRATION_BUDGET),
            calibration_criterion,
        ),
        (8, "defect experiment", Some(DEFECT_BUDGET), defect_criterion),
        (9, "valiron trend", Some(VALIRON_BUDGET), valiron_criterion),
        (10, "steinmetz inequality", Some(STEINMETZ_BUDGET), steinmetz_criterion),
        (11, "determinism", None, determinism_criterion),
    ];
    let mut failed = Vec::new();
    for (n, name, budget, check) in criteria {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let in_time = budget.is_none_or(|b| elapsed < b);
        let pass = res.pass && in_time;
        let budget_s = budget.map_or("none".to_string(), |b| format!("{}s", b.as_secs()));
        println!(
            "criterion {n} ({name}): {} in {:.2}s (budget {budget_s}): {}",
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            res.detail
        );
        if !pass {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 11 criteria PASS");
    } else {
        println!("acceptance: FAIL on criteria {failed:?}");
        std::process::exit(1);
    }
}

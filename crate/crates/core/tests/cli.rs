use std::path::PathBuf;

use diffnev::cli::{manifest_path, run, Outcome};
use diffnev::walgebra::{WPoly, WRat};

fn run_args(args: &[&str]) -> Outcome {
    run(std::iter::once("diffnev").chain(args.iter().copied()))
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("diffnev-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = scratch_dir("determinism");
    let cases: [&[&str]; 4] = [
        &["spread", "--map", "(w^2+z)/w", "--kmax", "4"],
        &["bezout", "--seed", "7", "--count", "10"],
        &["defect", "--function", "cos2", "--target", "0", "--r-grid", "2:4:1"],
        &[
            "steinmetz",
            "--function",
            "cos2",
            "--h",
            "w^2 - w",
            "--r-grid",
            "1:3:1",
            "--format",
            "json",
        ],
    ];
    for (i, args) in cases.iter().enumerate() {
        let out = dir.join(format!("run{i}.out"));
        let out_s = out.to_str().unwrap();
        let mut texts = Vec::new();
        for _ in 0..2 {
            let mut a = args.to_vec();
            a.extend(["--out", out_s]);
            let o = run_args(&a);
            assert!(o.code <= 1, "{args:?}: {}", o.stderr);
            texts.push((
                std::fs::read(&out).unwrap(),
                std::fs::read(manifest_path(&out)).unwrap(),
            ));
        }
        assert_eq!(texts[0], texts[1], "{args:?}");
        let stdout = run_args(args).stdout;
        assert_eq!(stdout.as_bytes(), texts[0].0.as_slice());
    }
}

#[test]
fn manifest_echoes_the_run() {
    let dir = scratch_dir("manifest");
    let out = dir.join("suite.json");
    let o = run_args(&[
        "localcheck",
        "--seed",
        "3",
        "--count",
        "20",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let m: serde_json::Value = serde_json::from_slice(&std::fs::read(manifest_path(&out)).unwrap()).unwrap();
    assert_eq!(m["command"], "localcheck");
    assert_eq!(m["seed"], 3);
    assert_eq!(m["version"], diffnev::cli::VERSION);
    assert_eq!(m["outputs"][0], out.to_str().unwrap());
    assert_eq!(m["inputs"][0], "localcheck");
    assert_eq!(m["verdict"], "PASS");
}

#[test]
fn symbolic_outputs_reparse() {
    for (map, k) in [("(w^2+z)/w", "2"), ("z/(w-1)^2 + 1", "2"), ("(w^3+z*w+1)/(w-z)", "1")] {
        let o = run_args(&["compose", "--map", map, "--k", k]);
        assert_eq!(o.code, 0);
        let back: WRat = o.stdout.trim().parse().unwrap();
        assert_eq!(
            back.degree(),
            WRat::parse(map).unwrap().degree().pow(k.parse().unwrap())
        );
        let again = run_args(&["compose", "--map", o.stdout.trim(), "--k", "1"]);
        assert_eq!(again.stdout, o.stdout);
    }
    let o = run_args(&["profile", "--map", "(w^2+z)/w", "--k", "3"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    for f in v["factors"].as_array().unwrap() {
        let h: WPoly = f["factor"].as_str().unwrap().parse().unwrap();
        assert!(h.degree().unwrap() >= 1);
    }
    let o = run_args(&["classify", "--map", "(z^2+1)/(w-z)^3 + z + 1"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    for key in ["a", "b"] {
        let s = v[key].as_str().unwrap();
        assert!(s.parse::<diffnev::exact::RatFunc>().is_ok(), "{s}");
    }
    let o = run_args(&["bezout", "--p", "w^2 + z", "--q", "w - 1"]);
    let v: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let (a, b): (WPoly, WPoly) = (
        v["a"].as_str().unwrap().parse().unwrap(),
        v["b"].as_str().unwrap().parse().unwrap(),
    );
    let (p, q): (WPoly, WPoly) = ("w^2 + z".parse().unwrap(), "w - 1".parse().unwrap());
    assert!((&(&a * &p) + &(&b * &q)).is_one());
}

#[test]
fn config_file_sets_quadrature_defaults() {
    let dir = scratch_dir("config");
    let cfg = dir.join("quad.conf");
    std::fs::write(&cfg, "# defaults\nnodes = 2048\ntolerance=1e-9\n").unwrap();
    let out = dir.join("t.csv");
    let o = run_args(&[
        "nevanlinna",
        "--function",
        "exp",
        "--target",
        "inf",
        "--r-grid",
        "1:2:1",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let m: serde_json::Value = serde_json::from_slice(&std::fs::read(manifest_path(&out)).unwrap()).unwrap();
    assert_eq!(m["cfg"]["nodes"], 2048);
    assert_eq!(m["cfg"]["tolerance"], 1e-9);
    std::fs::write(&cfg, "nodes = 16\n").unwrap();
    let o = run_args(&["nevanlinna", "--function", "exp", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    std::fs::write(&cfg, "resolution = 3\n").unwrap();
    let o = run_args(&["nevanlinna", "--function", "exp", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains(":1:"), "{}", o.stderr);
}

#[test]
fn parse_errors_point_at_the_input() {
    let o = run_args(&["compose", "--map", "w^2 + (z", "--k", "1"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("--map"), "{}", o.stderr);
    assert!(o.stderr.contains("position"), "{}", o.stderr);
    assert!(o.stderr.contains('^'), "{}", o.stderr);
}

#[test]
fn verdicts_set_the_exit_code() {
    assert_eq!(run_args(&["defect", "--function", "cos2", "--r-grid", "2:6:1"]).code, 1);
    assert_eq!(
        run_args(&[
            "defect",
            "--function",
            "exp2",
            "--r-grid",
            "3:5:1",
            "--allow-exceptional"
        ])
        .code,
        0
    );
    assert_eq!(
        run_args(&["valiron", "--function", "exp2", "--r-grid", "3:6:1"]).code,
        0
    );
    assert_eq!(run_args(&["valiron", "--function", "exp"]).code, 2);
}

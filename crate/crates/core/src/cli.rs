//! Command-line front end. [`run`] maps argv to an [`Outcome`] without
//! touching the process, so it can be driven from tests and examples.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::classifier::{classify, is_shift_exceptional};
use crate::composition::{
    compose_chain, compose_chain_forward, exceptional_cycle_data, multiplicity_profile, spread_sequence,
    MultiplicityProfile,
};
use crate::exact::rational::{fmt_rational, to_f64};
use crate::exact::{ParseError, RatFunc, Rational};
use crate::local::verify_order_inequality;

use crate::nevanlinna::{
    defect_experiment, par_rows, r_grid, steinmetz_check, target_row, valiron_check, valiron_trend, DefectOptions,
    NevError, NevanlinnaRow, QuadratureConfig, SolutionHandle, Target, Verdict,
};
use crate::suites::{bezout_suite, local_suite};
use crate::walgebra::{bezout, WPoly, WRat};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{flag}: {source}\n  {input}\n  {caret}")]
    Parse {
        flag: &'static str,
        input: String,
        caret: String,
        source: ParseError,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("cannot write {path}: {message}")]
    Io { path: String, message: String },
}

fn domain<E: Display>(e: E) -> CliError {
    CliError::Domain(e.to_string())
}

fn parse_arg<T>(flag: &'static str, input: &str, f: impl Fn(&str) -> Result<T, ParseError>) -> Result<T, CliError> {
    f(input).map_err(|source| CliError::Parse {
        flag,
        input: input.to_string(),
        caret: format!("{}^", " ".repeat(source.position.min(input.len()))),
        source,
    })
}

fn parse_map(input: &str) -> Result<WRat, CliError> {
    parse_arg("--map", input, WRat::parse)
}

fn parse_wpoly(flag: &'static str, input: &str) -> Result<WPoly, CliError> {
    parse_arg(flag, input, |s| s.parse())
}

fn parse_rational(flag: &'static str, input: &str) -> Result<Rational, CliError> {
    let f: RatFunc = parse_arg(flag, input, |s| s.parse())?;
    f.as_constant()
        .ok_or_else(|| CliError::Usage(format!("{flag}: expected a rational number, got {input}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Args, Clone, Debug)]
struct Output {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write the output here and a run manifest next to it
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
struct Quadrature {
    /// Initial number of circle nodes
    #[arg(long)]
    nodes: Option<usize>,
    /// Convergence tolerance between node doublings
    #[arg(long)]
    tolerance: Option<f64>,
    /// File of key=value quadrature defaults (nodes, refine_depth, tolerance)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
struct Experiment {
    /// Catalog function: exp2, cos2, z, exp, const
    #[arg(long, default_value = "cos2")]
    function: String,
    /// Catalog parameter c
    #[arg(long)]
    param: Option<f64>,
    /// Radii as start:stop:step
    #[arg(long = "r-grid", default_value = "1:8:1")]
    r_grid: String,
    #[command(flatten)]
    quad: Quadrature,
}

#[derive(Parser, Debug)]
#[command(
    name = "diffnev",
    version,
    about = "Composition, classification and value-distribution experiments for f(z+1) = R(z, f(z))"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// k-fold composition chain of R in lowest terms
    Compose {
        #[arg(long)]
        map: String,
        #[arg(long)]
        k: usize,
        /// Compose R_z first instead of last
        #[arg(long)]
        forward: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Denominator factorization of the k-th chain
    Profile {
        #[arg(long)]
        map: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Exact ratios e_k / d^k for k = 1..kmax
    Spread {
        #[arg(long)]
        map: String,
        #[arg(long)]
        kmax: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Normal form of R
    Classify {
        #[arg(long)]
        map: String,
        #[command(flatten)]
        output: Output,
    },
    /// Shift-exceptional test for a target, or the exceptional cycle data of R
    Exceptional {
        #[arg(long)]
        map: String,
        #[arg(long)]
        target: Option<String>,
        /// Largest cycle length searched when no target is given
        #[arg(long, default_value_t = crate::composition::DEFAULT_SEARCH_BOUND)]
        search_bound: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Bezout coefficients of P and Q, or the seeded random suite
    Bezout {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Local order inequality for (P, Q, f, beta), or the seeded random suite
    Localcheck {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Table of m, N, T and m/T for one target
    Nevanlinna {
        #[command(flatten)]
        exp: Experiment,
        /// Target value: a number, a+bi, or inf
        #[arg(long, default_value = "0")]
        target: String,
        #[command(flatten)]
        output: Output,
    },
    /// Defect trend m/T along the radius grid
    Defect {
        #[command(flatten)]
        exp: Experiment,
        #[arg(long, default_value = "0")]
        target: String,
        /// Run even if the target is shift-exceptional
        #[arg(long)]
        allow_exceptional: bool,
        /// Largest acceptable ratio at the last radius
        #[arg(long, default_value_t = 0.5)]
        ceiling: f64,
        #[command(flatten)]
        output: Output,
    },
    /// T of the shifted function against d T
    Valiron {
        #[command(flatten)]
        exp: Experiment,
        #[command(flatten)]
        output: Output,
    },
    /// m_f + m_{1/H(f)} <= 3 T_f along the radius grid
    Steinmetz {
        #[command(flatten)]
        exp: Experiment,
        /// Squarefree polynomial in w with constant coefficients
        #[arg(long)]
        h: String,
        #[command(flatten)]
        output: Output,
    },
}

/// What a run produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub inputs: Vec<String>,
    pub seed: Option<u64>,
    pub version: String,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub function: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cfg: Option<QuadratureConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
}

#[derive(Default)]
struct Report {
    body: String,
    verdict: Option<Verdict>,
    seed: Option<u64>,
    function: Option<String>,
    target: Option<String>,
    cfg: Option<QuadratureConfig>,
}

impl Report {
    fn new(body: String) -> Self {
        Report {
            body,
            ..Default::default()
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn num(x: f64) -> String {
    format!("{x}")
}

fn flags(f: &[String]) -> String {
    f.join(";")
}

fn require_json(format: Option<Format>, command: &str) -> Result<(), CliError> {
    match format {
        Some(Format::Csv) => Err(CliError::Usage(format!(
            "{command} produces a record; use --format json"
        ))),
        _ => Ok(()),
    }
}

fn load_config(q: &Quadrature) -> Result<QuadratureConfig, CliError> {
    let mut cfg = QuadratureConfig::default();
    if let Some(path) = &q.config {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |m: &str| CliError::Usage(format!("{}:{}: {m}", path.display(), i + 1));
            let (k, v) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let v = v.trim();
            match k.trim() {
                "nodes" => cfg.nodes = v.parse().map_err(|_| bad("nodes must be an integer"))?,
                "refine_depth" => cfg.refine_depth = v.parse().map_err(|_| bad("refine_depth must be an integer"))?,
                "tolerance" => cfg.tolerance = v.parse().map_err(|_| bad("tolerance must be a number"))?,
                other => {
                    return Err(bad(&format!(
                        "unknown key {other}; expected nodes, refine_depth or tolerance"
                    )))
                }
            }
        }
    }
    if let Some(n) = q.nodes {
        cfg.nodes = n;
    }
    if let Some(t) = q.tolerance {
        cfg.tolerance = t;
    }
    cfg.validate().map_err(domain)?;
    Ok(cfg)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let usage = || CliError::Usage(format!("--r-grid: expected start:stop:step, got {s}"));
    let [a, b, c] = parts.as_slice() else {
        return Err(usage());
    };
    let p = |x: &str| x.trim().parse::<f64>().map_err(|_| usage());
    r_grid(p(a)?, p(b)?, p(c)?).map_err(domain)
}

fn handle(e: &Experiment) -> Result<SolutionHandle, CliError> {
    SolutionHandle::by_name(&e.function, e.param).ok_or_else(|| {
        CliError::Usage(format!(
            "--function: unknown catalog entry {}; expected one of {}",
            e.function,
            SolutionHandle::NAMES.join(", ")
        ))
    })
}

fn parse_target(s: &str) -> Result<Target, CliError> {
    s.parse()
        .map_err(|_| CliError::Usage(format!("--target: expected a number, a+bi or inf, got {s}")))
}

#[derive(Serialize)]
struct ComposeRecord {
    map: String,
    k: usize,
    direction: &'static str,
    degree: usize,
    value: String,
}

#[derive(Serialize)]
struct FactorRecord {
    factor: String,
    multiplicity: u32,
}

#[derive(Serialize)]
struct ProfileRecord {
    depth: usize,
    degree: u64,
    factors: Vec<FactorRecord>,
    unit: String,
    e0: u64,
    ek: u64,
    ratio: String,
    fiber_mass: u64,
    fiber_ramification: u64,
}

impl From<&MultiplicityProfile> for ProfileRecord {
    fn from(p: &MultiplicityProfile) -> Self {
        ProfileRecord {
            depth: p.depth,
            degree: p.degree,
            factors: p
                .factors
                .iter()
                .map(|(h, e)| FactorRecord {
                    factor: h.to_string(),
                    multiplicity: *e,
                })
                .collect(),
            unit: p.unit.to_string(),
            e0: p.e0,
            ek: p.ek,
            ratio: fmt_rational(&p.ratio()),
            fiber_mass: p.fiber_mass(),
            fiber_ramification: p.fiber_ramification(),
        }
    }
}

#[derive(Serialize)]
struct BezoutRecord {
    p: String,
    q: String,
    a: String,
    b: String,
    resultant: String,
}

#[derive(Serialize)]
struct TableRecord<'a, R: Serialize> {
    function: &'a str,
    target: Option<String>,
    cfg: QuadratureConfig,
    rows: &'a [R],
    verdict: Verdict,
}

fn nevanlinna_csv(rows: &[NevanlinnaRow]) -> String {
    csv_table(
        &["r", "m", "N", "T", "ratio", "flags"],
        rows.iter()
            .map(|r| vec![num(r.r), num(r.m), num(r.n), num(r.t), num(r.ratio), flags(&r.flags)]),
    )
}

fn execute(command: &Command) -> Result<Report, CliError> {
    match command {
        Command::Compose {
            map,
            k,
            forward,
            output,
        } => {
            let r = parse_map(map)?;
            let chain = if *forward {
                compose_chain_forward(&r, *k)
            } else {
                compose_chain(&r, *k)
            };
            let value = chain.value().to_string();
            Ok(Report::new(match output.format {
                Some(Format::Json) => json(&ComposeRecord {
                    map: r.to_string(),
                    k: *k,
                    direction: if *forward { "forward" } else { "backward" },
                    degree: chain.degree(),
                    value,
                }),
                Some(Format::Csv) => csv_table(
                    &["k", "degree", "value"],
                    [vec![k.to_string(), chain.degree().to_string(), value]],
                ),
                None => format!("{value}\n"),
            }))
        }
        Command::Profile { map, k, output } => {
            require_json(output.format, "profile")?;
            let r = parse_map(map)?;
            if r.degree() < 1 {
                return Err(CliError::Domain("the map must have degree at least 1 in w".into()));
            }
            Ok(Report::new(json(&ProfileRecord::from(&multiplicity_profile(&r, *k)))))
        }
        Command::Spread { map, kmax, output } => {
            let r = parse_map(map)?;
            let rows = spread_sequence(&r, *kmax).map_err(domain)?;
            Ok(Report::new(match output.format {
                Some(Format::Json) => json(&rows),
                _ => csv_table(
                    &[
                        "k",
                        "d^k",
                        "e0",
                        "ek",
                        "ratio_num",
                        "ratio_den",
                        "ratio_exact",
                        "ratio_float",
                    ],
                    rows.iter().map(|s| {
                        vec![
                            s.k.to_string(),
                            s.dk.to_string(),
                            s.e0.to_string(),
                            s.ek.to_string(),
                            s.ratio.numer().to_string(),
                            s.ratio.denom().to_string(),
                            fmt_rational(&s.ratio),
                            num(to_f64(&s.ratio)),
                        ]
                    }),
                ),
            }))
        }
        Command::Classify { map, output } => {
            require_json(output.format, "classify")?;
            let r = parse_map(map)?;
            Ok(Report::new(json(&classify(&r).map_err(domain)?)))
        }
        Command::Exceptional {
            map,
            target,
            search_bound,
            output,
        } => {
            require_json(output.format, "exceptional")?;
            let r = parse_map(map)?;
            match target {
                Some(t) => {
                    let a = parse_rational("--target", t)?;
                    Ok(Report::new(json(&is_shift_exceptional(&r, &a).map_err(domain)?)))
                }
                None => {
                    if r.degree() < 2 {
                        return Err(CliError::Domain("the map must have degree at least 2 in w".into()));
                    }
                    Ok(Report::new(json(&exceptional_cycle_data(&r, *search_bound))))
                }
            }
        }
        Command::Bezout {
            p,
            q,
            seed,
            count,
            output,
        } => {
            require_json(output.format, "bezout")?;
            match (p, q, seed) {
                (Some(p), Some(q), None) => {
                    let (p, q) = (parse_wpoly("--p", p)?, parse_wpoly("--q", q)?);
                    let pair = bezout(&p, &q).map_err(domain)?;
                    Ok(Report::new(json(&BezoutRecord {
                        p: p.to_string(),
                        q: q.to_string(),
                        a: pair.a.to_string(),
                        b: pair.b.to_string(),
                        resultant: pair.resultant.to_string(),
                    })))
                }
                (None, None, Some(seed)) => {
                    let s = bezout_suite(*seed, *count);
                    Ok(Report {
                        verdict: Some(Verdict::from_bool(s.all_passed())),
                        seed: Some(*seed),
                        ..Report::new(json(&s))
                    })
                }
                _ => Err(CliError::Usage("bezout: pass either --p and --q, or --seed".into())),
            }
        }
        Command::Localcheck {
            p,
            q,
            f,
            beta,
            seed,
            count,
            output,
        } => {
            require_json(output.format, "localcheck")?;
            match (p, q, f, seed) {
                (Some(p), Some(q), Some(f), None) => {
                    let (p, q) = (parse_wpoly("--p", p)?, parse_wpoly("--q", q)?);
                    let f: RatFunc = parse_arg("--f", f, |s| s.parse())?;
                    let beta = parse_rational("--beta", beta)?;
                    let c = verify_order_inequality(&p, &q, &f, &beta).map_err(domain)?;
                    Ok(Report {
                        verdict: Some(Verdict::from_bool(c.holds)),
                        ..Report::new(json(&c))
                    })
                }
                (None, None, None, Some(seed)) => {
                    let s = local_suite(*seed, *count);
                    Ok(Report {
                        verdict: Some(Verdict::from_bool(s.all_passed())),
                        seed: Some(*seed),
                        ..Report::new(json(&s))
                    })
                }
                _ => Err(CliError::Usage(
                    "localcheck: pass either --p, --q and --f, or --seed".into(),
                )),
            }
        }
        Command::Nevanlinna { exp, target, output } => {
            let f = handle(exp)?;
            let grid = parse_grid(&exp.r_grid)?;
            let cfg = load_config(&exp.quad)?;
            let a = parse_target(target)?;
            let rows: Vec<NevanlinnaRow> = par_rows(&grid, |r| {
                target_row(&f, r, a, &cfg).unwrap_or_else(|e| NevanlinnaRow {
                    r,
                    m: f64::NAN,
                    n: f64::NAN,
                    t: f64::NAN,
                    ratio: f64::NAN,
                    flags: vec![format!("error: {e}")],
                })
            });
            let ceiling = 1.0 + 5.0 * cfg.tolerance;
            let ok = rows.iter().all(|r| (0.0..=ceiling).contains(&r.ratio));
            let verdict = Verdict::from_bool(ok);
            let body = match output.format {
                Some(Format::Json) => json(&TableRecord {
                    function: &f.name,
                    target: Some(a.to_string()),
                    cfg,
                    rows: &rows,
                    verdict,
                }),
                _ => nevanlinna_csv(&rows),
            };
            Ok(Report {
                body,
                verdict: Some(verdict),
                function: Some(f.name.clone()),
                target: Some(a.to_string()),
                cfg: Some(cfg),
                ..Default::default()
            })
        }
        Command::Defect {
            exp,
            target,
            allow_exceptional,
            ceiling,
            output,
        } => {
            let f = handle(exp)?;
            let grid = parse_grid(&exp.r_grid)?;
            let cfg = load_config(&exp.quad)?;
            let a = parse_target(target)?;
            let opts = DefectOptions {
                allow_exceptional: *allow_exceptional,
                ceiling: *ceiling,
            };
            let rep = defect_experiment(&f, a, &grid, &cfg, &opts).map_err(|e| match e {
                NevError::ExceptionalTarget(_) => CliError::Usage(format!("{e} (--allow-exceptional)")),
                e => domain(e),
            })?;
            let body = match output.format {
                Some(Format::Json) => json(&rep),
                _ => nevanlinna_csv(&rep.rows),
            };
            Ok(Report {
                body,
                verdict: Some(rep.verdict),
                function: Some(rep.function.clone()),
                target: Some(rep.target.clone()),
                cfg: Some(cfg),
                ..Default::default()
            })
        }
        Command::Valiron { exp, output } => {
            let f = handle(exp)?;
            let grid = parse_grid(&exp.r_grid)?;
            let cfg = load_config(&exp.quad)?;
            let rows = valiron_check(&f, &grid, &cfg).map_err(domain)?;
            let verdict = valiron_trend(&rows);
            let body = match output.format {
                Some(Format::Json) => json(&TableRecord {
                    function: &f.name,
                    target: None,
                    cfg,
                    rows: &rows,
                    verdict,
                }),
                _ => csv_table(
                    &["r", "T_shift", "dT", "ratio", "flags"],
                    rows.iter()
                        .map(|r| vec![num(r.r), num(r.t_shift), num(r.d_t), num(r.ratio), flags(&r.flags)]),
                ),
            };
            Ok(Report {
                body,
                verdict: Some(verdict),
                function: Some(f.name.clone()),
                cfg: Some(cfg),
                ..Default::default()
            })
        }
        Command::Steinmetz { exp, h, output } => {
            let f = handle(exp)?;
            let grid = parse_grid(&exp.r_grid)?;
            let cfg = load_config(&exp.quad)?;
            let hp = parse_wpoly("--h", h)?;
            let rep = steinmetz_check(&f, &hp, &grid, &cfg).map_err(domain)?;
            let body = match output.format {
                Some(Format::Json) => json(&rep),
                _ => csv_table(
                    &["r", "lhs", "rhs", "holds", "flags"],
                    rep.rows
                        .iter()
                        .map(|r| vec![num(r.r), num(r.lhs), num(r.rhs), r.holds.to_string(), flags(&r.flags)]),
                ),
            };
            Ok(Report {
                body,
                verdict: Some(rep.verdict),
                function: Some(rep.function.clone()),
                target: Some(rep.h.clone()),
                cfg: Some(cfg),
                ..Default::default()
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Compose { .. } => "compose",
        Command::Profile { .. } => "profile",
        Command::Spread { .. } => "spread",
        Command::Classify { .. } => "classify",
        Command::Exceptional { .. } => "exceptional",
        Command::Bezout { .. } => "bezout",
        Command::Localcheck { .. } => "localcheck",
        Command::Nevanlinna { .. } => "nevanlinna",
        Command::Defect { .. } => "defect",
        Command::Valiron { .. } => "valiron",
        Command::Steinmetz { .. } => "steinmetz",
    }
}

fn out_path(c: &Command) -> Option<&Path> {
    let o = match c {
        Command::Compose { output, .. }
        | Command::Profile { output, .. }
        | Command::Spread { output, .. }
        | Command::Classify { output, .. }
        | Command::Exceptional { output, .. }
        | Command::Bezout { output, .. }
        | Command::Localcheck { output, .. }
        | Command::Nevanlinna { output, .. }
        | Command::Defect { output, .. }
        | Command::Valiron { output, .. }
        | Command::Steinmetz { output, .. } => output,
    };
    o.out.as_deref()
}

/// Path of the manifest written next to `out`.
pub fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn failure(e: CliError) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Parses `argv` (program name first) and runs the subcommand.
///
/// Exit code 0 on success or PASS, 1 on a FAIL verdict, 2 on input errors.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let report = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => return failure(e),
    };
    let code = match report.verdict {
        Some(Verdict::Fail) => 1,
        _ => 0,
    };
    let Some(out) = out_path(&cli.command) else {
        return Outcome {
            code,
            stdout: report.body,
            stderr: String::new(),
        };
    };
    let manifest = RunManifest {
        command: command_name(&cli.command).to_string(),
        inputs: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
        seed: report.seed,
        version: VERSION.to_string(),
        outputs: vec![out.display().to_string()],
        function: report.function,
        target: report.target,
        cfg: report.cfg,
        verdict: report.verdict,
    };
    let mpath = manifest_path(out);
    if let Err(e) = write(out, &report.body).and_then(|_| write(&mpath, &json(&manifest))) {
        return failure(e);
    }
    Outcome {
        code,
        stdout: format!("wrote {} and {}\n", out.display(), mpath.display()),
        stderr: String::new(),
    }
}

/// Entry point for the binary.
pub fn main() -> std::process::ExitCode {
    let o = run(std::env::args_os());
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    std::process::ExitCode::from(o.code as u8)
}

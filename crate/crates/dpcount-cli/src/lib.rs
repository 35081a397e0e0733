//! Command-line front end: subcommands `count`, `scan`, `predict`,
//! `constants`, and `verify`, with CSV/JSON output and reproducible runs.
//!
//! Exit codes: 0 success, 1 verification or equality failure, 2 usage error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dpcount::constants::{
    predict, splitting_instances, tamagawa_p, tamagawa_p_oracle, theta_closed,
};
use dpcount::exact::{decimal_round, rat_int, QInterval, Rational};
use dpcount::qfield::make_field;
use dpcount::surface::{count_direct, CountResult};
use dpcount::torsor::count_torsor;
use dpcount::verify::{
    all_suites, constants_suite, correspondence_suite, example_suite, geometry_suite,
    prediction_suite, CheckResult,
};
use dpcount::{Boundary, FieldParams};
use num::{BigInt, Signed, Zero};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "dpcount",
    about = "Count integral points of bounded height on the A3 quartic del Pezzo surface \
             and compare against the predicted asymptotic"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Count integral points at the given height bounds.
    Count(RunArgs),
    /// Produce a table comparing counts against the predicted main term.
    Scan(RunArgs),
    /// Print the predicted leading constant and its factored parts.
    Predict(RunArgs),
    /// Print the constant ingredients: local factors, volumes, densities.
    Constants(RunArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Torsor,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Base field: `q` or `iq:<d>` with d a negative squarefree integer.
    #[arg(long, default_value = "q")]
    pub field: String,
    /// Boundary: 1 (above the singularity) or 2 (above the line).
    #[arg(long, default_value_t = 1)]
    pub boundary: u8,
    /// Comma-separated height bounds (integers or decimals).
    #[arg(long = "B")]
    pub bounds: Option<String>,
    #[arg(long, value_enum, default_value_t = MethodArg::Both)]
    pub method: MethodArg,
    /// Euler-product truncation: all prime ideals of norm ≤ this bound.
    #[arg(long, default_value_t = 100_000)]
    pub prime_bound: i64,
    /// Valuation-cell depth of the p-adic density oracle.
    #[arg(long, default_value_t = 12)]
    pub depth: u32,
    /// Worker threads (falls back to DPCOUNT_WORKERS, then all cores).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    /// Output file (written atomically); stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for Monte Carlo spot checks.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Suite: all, geometry, constants, example, correspondence.
    #[arg(default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 12)]
    pub depth: u32,
    #[arg(long, default_value_t = 10_000)]
    pub prime_bound: i64,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

pub fn parse_field(spec: &str) -> Result<FieldParams> {
    if spec == "q" {
        return Ok(make_field(0)?);
    }
    if let Some(d) = spec.strip_prefix("iq:") {
        let d: i64 = d.parse().with_context(|| format!("bad discriminant part {d:?}"))?;
        if d >= 0 {
            bail!("iq:<d> requires a negative squarefree d, got {d}");
        }
        return Ok(make_field(d)?);
    }
    bail!("field spec must be `q` or `iq:<d>`, got {spec:?}")
}

/// Parses a positive decimal or integer into an exact rational.
pub fn parse_bound(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (int_part, frac_part) = match s.split_once('.') {
        Some((a, b)) => (a, b),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        bail!("empty height bound");
    }
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(&digits).with_context(|| format!("bad height bound {s:?}"))?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let v = Rational::new(num, den);
    if v.is_negative() {
        bail!("height bound must be nonnegative: {s}");
    }
    Ok(v)
}

fn parse_bound_list(arg: &Option<String>) -> Result<Vec<Rational>> {
    match arg {
        None => Ok(vec![rat_int(10), rat_int(100), rat_int(1000)]),
        Some(s) if s.trim().is_empty() => Ok(Vec::new()),
        Some(s) => {
            let out: Result<Vec<Rational>> = s.split(',').map(parse_bound).collect();
            let out = out?;
            if out.windows(2).any(|w| w[0] >= w[1]) {
                bail!("height bounds must be strictly increasing");
            }
            Ok(out)
        }
    }
}

fn boundary_of(args_boundary: u8) -> Result<Boundary> {
    Boundary::from_index(args_boundary)
        .ok_or_else(|| anyhow!("boundary must be 1 or 2, got {}", args_boundary))
}

fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let workers = workers.or_else(|| {
        std::env::var("DPCOUNT_WORKERS").ok().and_then(|v| v.parse().ok())
    });
    match workers {
        None => Ok(f()),
        Some(n) if n >= 1 => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build()?;
            Ok(pool.install(f))
        }
        Some(n) => bail!("worker count must be ≥ 1, got {n}"),
    }
}

/// Writes output atomically: temp file in the target directory, then rename.
fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => {
            let tmp = tmp_path(path);
            {
                let mut fh = std::fs::File::create(&tmp)?;
                fh.write_all(content.as_bytes())?;
                fh.sync_all()?;
            }
            std::fs::rename(&tmp, path)?;
            Ok(())
        }
    }
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

fn run_method(
    field: &FieldParams,
    boundary: Boundary,
    bound: &Rational,
    method: MethodArg,
) -> Result<(CountResult, bool)> {
    match method {
        MethodArg::Direct => Ok((count_direct(field, boundary, bound)?, true)),
        MethodArg::Torsor => Ok((count_torsor(field, boundary, bound)?, true)),
        MethodArg::Both => {
            let d = count_direct(field, boundary, bound)?;
            let t = count_torsor(field, boundary, bound)?;
            let equal = d.count == t.count;
            let merged = CountResult {
                elapsed_ms: d.elapsed_ms + t.elapsed_ms,
                ..t
            };
            Ok((merged, equal))
        }
    }
}

pub fn cmd_count(args: &RunArgs) -> Result<i32> {
    let field = parse_field(&args.field)?;
    let boundary = boundary_of(args.boundary)?;
    let bounds = parse_bound_list(&args.bounds)?;
    let method = args.method;
    let results: Result<Vec<(CountResult, bool)>> = with_workers(args.workers, || {
        bounds.iter().map(|b| run_method(&field, boundary, b, method)).collect()
    })?;
    let results = results?;
    let mut content = String::new();
    let mut all_equal = true;
    for (r, equal) in &results {
        all_equal &= equal;
        writeln!(
            content,
            "field={} boundary={} B={} method={} count={} raw={} ms={}{}",
            args.field,
            boundary.index(),
            decimal_round(&r.bound, 4, false),
            match method {
                MethodArg::Both => "both".to_string(),
                _ => r.method.to_string(),
            },
            r.count,
            r.raw_tuples,
            r.elapsed_ms,
            if *equal { "" } else { " MISMATCH" },
        )?;
    }
    emit(&args.out, &content)?;
    Ok(if all_equal { EXIT_OK } else { EXIT_CHECK_FAILED })
}

struct ScanRow {
    bound: Rational,
    count: u64,
    main: QInterval,
    ratio: QInterval,
    ms: u128,
}

fn scan_rows(args: &RunArgs) -> Result<(Vec<ScanRow>, bool)> {
    let field = parse_field(&args.field)?;
    let boundary = boundary_of(args.boundary)?;
    let bounds = parse_bound_list(&args.bounds)?;
    let method = args.method;
    let prediction = predict(&field, boundary, args.prime_bound);
    let mut rows = Vec::new();
    let mut all_equal = true;
    let inner: Result<()> = with_workers(args.workers, || {
        for b in &bounds {
            let (r, equal) = run_method(&field, boundary, b, method)?;
            all_equal &= equal;
            let main = prediction.main_term(b);
            let ratio = if main.lo.is_positive() {
                QInterval::point(rat_int(r.count as i128)).div(&main)
            } else {
                QInterval::new(Rational::zero(), Rational::zero())
            };
            rows.push(ScanRow { bound: b.clone(), count: r.count, main, ratio, ms: r.elapsed_ms });
        }
        Ok(())
    })?;
    inner?;
    Ok((rows, all_equal))
}

fn render_scan(rows: &[ScanRow], format: FormatArg) -> String {
    const DIGITS: usize = 6;
    match format {
        FormatArg::Csv => {
            let mut out = String::from("B,count,main_lo,main_hi,ratio_lo,ratio_hi,ms\n");
            for r in rows {
                let (main_lo, main_hi) = r.main.to_decimals(DIGITS);
                let (ratio_lo, ratio_hi) = r.ratio.to_decimals(DIGITS);
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    decimal_round(&r.bound, 4, false),
                    r.count,
                    main_lo,
                    main_hi,
                    ratio_lo,
                    ratio_hi,
                    r.ms
                )
                .unwrap();
            }
            out
        }
        FormatArg::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let (main_lo, main_hi) = r.main.to_decimals(DIGITS);
                    let (ratio_lo, ratio_hi) = r.ratio.to_decimals(DIGITS);
                    serde_json::json!({
                        "B": decimal_round(&r.bound, 4, false),
                        "count": r.count,
                        "main": [main_lo, main_hi],
                        "ratio": [ratio_lo, ratio_hi],
                        "ms": r.ms,
                    })
                })
                .collect();
            let doc = serde_json::json!({ "rows": rows });
            let mut s = serde_json::to_string_pretty(&doc).unwrap();
            s.push('\n');
            s
        }
    }
}

pub fn cmd_scan(args: &RunArgs) -> Result<i32> {
    let (rows, all_equal) = scan_rows(args)?;
    emit(&args.out, &render_scan(&rows, args.format))?;
    Ok(if all_equal { EXIT_OK } else { EXIT_CHECK_FAILED })
}

pub fn cmd_predict(args: &RunArgs) -> Result<i32> {
    let field = parse_field(&args.field)?;
    let boundary = boundary_of(args.boundary)?;
    let p = predict(&field, boundary, args.prime_bound);
    let content = match args.format {
        FormatArg::Json => {
            let alpha: Vec<serde_json::Value> = p
                .alpha_parts
                .iter()
                .map(|(face, v)| {
                    serde_json::json!({ "face": [face.0, face.1], "volume": v.to_string() })
                })
                .collect();
            let doc = serde_json::json!({
                "field": args.field,
                "boundary": boundary.index(),
                "b": p.b,
                "rho": p.rho.to_string(),
                "alpha": alpha,
                "alpha_sum": p.alpha_sum.to_string(),
                "tau_infinity": p.tau_infinity.to_string(),
                "c_symbolic": p.c_symbolic.to_string(),
                "euler_truncation": p.euler.truncation,
                "euler": [p.euler.full.to_decimals(8).0, p.euler.full.to_decimals(8).1],
                "c": [p.c.to_decimals(10).0, p.c.to_decimals(10).1],
            });
            let mut s = serde_json::to_string_pretty(&doc).unwrap();
            s.push('\n');
            s
        }
        FormatArg::Csv => {
            let mut s = String::new();
            writeln!(s, "field={} boundary={}", args.field, boundary.index()).unwrap();
            writeln!(s, "b = {}", p.b).unwrap();
            writeln!(s, "rho = {}", p.rho).unwrap();
            for (face, v) in &p.alpha_parts {
                writeln!(s, "alpha(E{}, E{}) = {}", face.0, face.1, v).unwrap();
            }
            writeln!(s, "alpha_sum = {}", p.alpha_sum).unwrap();
            writeln!(s, "tau_infinity = {}", p.tau_infinity).unwrap();
            writeln!(s, "c_symbolic = {}", p.c_symbolic).unwrap();
            writeln!(s, "euler(P={}) = {}", p.euler.truncation, p.euler.full).unwrap();
            writeln!(s, "c = {}", p.c).unwrap();
            writeln!(s, "main(B) = c * B * (log B)^{}", p.b - 1).unwrap();
            s
        }
    };
    emit(&args.out, &content)?;
    Ok(EXIT_OK)
}

pub fn cmd_constants(args: &RunArgs) -> Result<i32> {
    let field = parse_field(&args.field)?;
    let boundary = boundary_of(args.boundary)?;
    let p = predict(&field, boundary, args.prime_bound);
    let mut s = String::new();
    writeln!(s, "field={} boundary={}", args.field, boundary.index())?;
    writeln!(s, "rho = {}", p.rho)?;
    writeln!(s, "b = {}", p.b)?;
    writeln!(s, "theta(q) closed form at q = 2, 3, 5:")?;
    for q in [2i128, 3, 5] {
        writeln!(s, "  theta({q}) = {}", theta_closed(boundary, q))?;
    }
    writeln!(s, "euler product over norms <= {}: {}", p.euler.truncation, p.euler.full)?;
    for (face, v) in &p.alpha_parts {
        writeln!(s, "alpha(E{}, E{}) = {}", face.0, face.1, v)?;
    }
    writeln!(s, "alpha_sum = {}", p.alpha_sum)?;
    writeln!(s, "tau_infinity = {}", p.tau_infinity)?;
    writeln!(s, "tamagawa factors (closed form vs oracle, depth {}):", args.depth)?;
    for (d, pi) in splitting_instances(&[2, 3]) {
        let closed = tamagawa_p(boundary, pi.norm);
        let oracle = tamagawa_p_oracle(boundary, &pi, args.depth);
        writeln!(
            s,
            "  d={d} p={} norm={} ({:?}): {} in {}",
            pi.rational_prime, pi.norm, pi.splitting, closed, oracle
        )?;
    }
    writeln!(s, "c = {}", p.c)?;
    emit(&args.out, &s)?;
    Ok(EXIT_OK)
}

/// Seeded Monte Carlo spot check of the α volumes, reported as extra
/// verification lines.
fn monte_carlo_alpha_checks(seed: u64) -> Vec<CheckResult> {
    use dpcount::constants::{alpha, alpha_polytope};
    use dpcount::exact::int_to_i128;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let approx = |r: &Rational| int_to_i128(r.numer()) as f64 / int_to_i128(r.denom()) as f64;
    let mut out = Vec::new();
    let mut cases: Vec<(Boundary, (usize, usize))> =
        vec![(Boundary::AboveSingularity, (1, 2)), (Boundary::AboveSingularity, (2, 3))];
    for face in [(1, 2), (2, 3), (1, 4)] {
        cases.push((Boundary::AboveLine, face));
    }
    const SAMPLES: u64 = 1_000_000;
    for (boundary, face) in cases {
        let poly = alpha_polytope(boundary, face).unwrap();
        let rows: Vec<(Vec<f64>, f64)> = poly
            .rows
            .iter()
            .map(|(a, b)| (a.iter().map(&approx).collect(), approx(b)))
            .collect();
        let mut hits = 0u64;
        let mut t = vec![0f64; poly.dim];
        for _ in 0..SAMPLES {
            for v in t.iter_mut() {
                *v = rng.gen::<f64>();
            }
            if rows.iter().all(|(a, b)| {
                a.iter().zip(&t).map(|(x, y)| x * y).sum::<f64>() <= *b + 1e-12
            }) {
                hits += 1;
            }
        }
        let est = hits as f64 / SAMPLES as f64;
        let sigma = (est * (1.0 - est) / SAMPLES as f64).sqrt();
        let exact = approx(&alpha(boundary, face).unwrap());
        out.push(CheckResult {
            suite: "constants",
            name: format!("alpha-monte-carlo-i{}-E{}E{}", boundary.index(), face.0, face.1),
            pass: (est - exact).abs() <= 3.0 * sigma + 1e-9,
            detail: format!("mc {est:.6} exact {exact:.6}"),
        });
    }
    out
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32> {
    let checks: Option<Vec<CheckResult>> = with_workers(args.workers, || match args.suite.as_str() {
        "all" => {
            let mut v = all_suites();
            v.extend(monte_carlo_alpha_checks(args.seed));
            Some(v)
        }
        "geometry" => Some(geometry_suite()),
        "constants" => {
            let mut v = constants_suite(args.depth);
            v.extend(monte_carlo_alpha_checks(args.seed));
            Some(v)
        }
        "example" => Some(example_suite()),
        "correspondence" => Some(correspondence_suite()),
        "prediction" => Some(prediction_suite(args.prime_bound)),
        _ => None,
    })?;
    let Some(checks) = checks else {
        bail!("unknown suite {:?}; expected all, geometry, constants, example, correspondence, or prediction", args.suite);
    };
    let mut failed = 0usize;
    for c in &checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        if c.detail.is_empty() {
            println!("{status} {}/{}", c.suite, c.name);
        } else {
            println!("{status} {}/{}: {}", c.suite, c.name, c.detail);
        }
        if !c.pass {
            failed += 1;
        }
    }
    println!("{} checks, {} failed", checks.len(), failed);
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

/// Entry point: returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match &cli.command {
        Command::Count(args) => cmd_count(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Predict(args) => cmd_predict(args),
        Command::Constants(args) => cmd_constants(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            EXIT_USAGE
        }
    }
}


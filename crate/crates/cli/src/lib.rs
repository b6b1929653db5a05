//! The `kappa` command. `run` is the whole program; `main` only wires it to
//! the process streams and exit code.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use kappa_core::acceptance;
use kappa_core::asymptotics::{
    decay_fit, exp_sum_separation, holder_estimate, leading_term_sl2, leading_term_su2, sl2_spherical_amplitude,
    DEFAULT_GROWTH_THRESHOLD,
};
use kappa_core::catalog::{kappa_table, load_catalog_path};
use kappa_core::liegroup::{frobenius_distance, iwasawa, kak, SpecialLinearElement};
use kappa_core::rational::{format_rational, parse_rational};
use kappa_core::rootsys::{build_root_system, parse_mult_assignment, Covector, Family, RootSystem};
use kappa_core::spherical::{
    deriv_spherical_sl2, spherical_compact_su2, spherical_sl2, spherical_sl3, SpectralParameter, MIN_SL3_SAMPLES,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("output error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) | CliError::Io(_) => EXIT_FAILURE,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn failure(e: impl ToString) -> CliError {
    CliError::Failure(e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "kappa", version, about = "Restricted root systems, kappa tables and spherical-function numerics")]
pub struct Cli {
    /// RNG seed for every randomised computation
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    /// Worker threads (accepted for compatibility; computation is single-threaded)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Significant digits for floating-point output (default: shortest round-trip)
    #[arg(long, global = true)]
    digits: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RootArgs {
    #[arg(long)]
    family: String,
    /// Defaults to the fixed rank of exceptional families
    #[arg(long)]
    rank: Option<usize>,
    /// e.g. `short:2,long:1` or `all:1`
    #[arg(long)]
    mult: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Group {
    Sl2,
    Sl3,
    Su2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatGroup {
    Sl2,
    Su2,
}

#[derive(Debug, Args)]
struct ScaleArgs {
    #[arg(long, default_value_t = 1.0)]
    tmin: f64,
    #[arg(long, default_value_t = 1.0)]
    tmax: f64,
    /// Number of geometrically spaced scales from tmin to tmax
    #[arg(long, default_value_t = 1)]
    tsteps: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact kappa of a root system with multiplicities
    Kappa(RootArgs),
    /// Kappa for every catalog row against its expected value
    Table {
        #[arg(long, env = "KAPPA_CATALOG", default_value = "default")]
        catalog: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Fundamental weights in simple-root coordinates, with n and kappa
    Weights(RootArgs),
    /// Whether eta lies in the convex hull of the Weyl orbit of rho
    Region {
        #[command(flatten)]
        root: RootArgs,
        /// Simple-root coordinates, rationals separated by commas
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// Iwasawa factors g = k exp(h) nu of a matrix file
    Iwasawa {
        #[arg(long)]
        matrix: String,
    },
    /// Cartan factors g = k1 exp(a) k2^T of a matrix file
    Kak {
        #[arg(long)]
        matrix: String,
    },
    /// Spherical-function samples as CSV (t, Y, re, im, err)
    Spherical {
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        xi: String,
        #[arg(long, allow_hyphen_values = true)]
        eta: Option<String>,
        /// Y values (the angle θ for su2)
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[command(flatten)]
        scales: ScaleArgs,
        /// Y-derivative order (sl2 only)
        #[arg(long, default_value_t = 0)]
        order: usize,
        /// sl3: the torus point is exp(Y · diag(d1, d2, -d1-d2))
        #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
        direction: String,
        /// sl3 Monte Carlo sample count
        #[arg(long, default_value_t = MIN_SL3_SAMPLES)]
        samples: usize,
    },
    /// Log-log decay fit of |value| against t, per Y
    Decay {
        #[arg(long)]
        input: String,
        /// Replace each block of this many consecutive scales by its peak
        #[arg(long, default_value_t = 1)]
        window: usize,
        /// Print per-sample rows (Y, t, magnitude, fitted) instead of the summary
        #[arg(long)]
        samples: bool,
    },
    /// Empirical Hölder quotients of a family sampled on a common Y grid
    Holder {
        #[arg(long)]
        input: String,
        #[arg(long, default_value_t = 0)]
        order: usize,
        #[arg(long)]
        alpha: String,
        /// lo,hi restriction of the grid
        #[arg(long, allow_hyphen_values = true)]
        region: Option<String>,
        #[arg(long, default_value_t = DEFAULT_GROWTH_THRESHOLD)]
        threshold: f64,
    },
    /// Quadrature against the stationary-phase leading term, as CSV
    Statphase {
        #[arg(long, value_enum)]
        group: StatGroup,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1.0)]
        xi: f64,
        /// Torus parameter (the angle θ for su2)
        #[arg(long = "Y", allow_hyphen_values = true)]
        y: f64,
        #[command(flatten)]
        scales: ScaleArgs,
    },
    /// Cesàro mean of |Σ f_x e^{itu_x} - f_y e^{itu_y}|² over t = m..m+n-1
    Expsum {
        /// Coefficients `re` or `re:im`, separated by commas
        #[arg(long, allow_hyphen_values = true)]
        fx: String,
        #[arg(long, allow_hyphen_values = true)]
        fy: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        ux: String,
        #[arg(long, allow_hyphen_values = true)]
        uy: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0)]
        m: i64,
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Run the acceptance criteria
    Selftest {
        /// Run a single criterion
        #[arg(long)]
        only: Option<u8>,
    },
}

struct Fmt {
    digits: Option<usize>,
}

impl Fmt {
    fn f(&self, x: f64) -> String {
        match self.digits {
            Some(d) => format!("{:.*e}", d.saturating_sub(1), x),
            None => format!("{x:?}"),
        }
    }
}

/// Parses `argv` (including the program name) and runs it.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    if cli.threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }
    if cli.digits == Some(0) || cli.digits.is_some_and(|d| d > 17) {
        return Err(usage("--digits must be in 1..=17"));
    }
    let fmt = Fmt { digits: cli.digits };
    match &cli.command {
        Command::Kappa(root) => {
            let sys = root_system(root)?;
            writeln!(out, "{}", format_rational(&sys.kappa()))?;
        }
        Command::Table { catalog, format } => return table(catalog, *format, out),
        Command::Weights(root) => {
            let sys = root_system(root)?;
            writeln!(out, "weight,coordinates,n")?;
            for (i, mu) in sys.fundamental_weights().iter().enumerate() {
                let coords: Vec<String> = mu.coords.iter().map(format_rational).collect();
                writeln!(out, "{},{},{}", i + 1, coords.join(" "), sys.n_of(mu).map_err(failure)?)?;
            }
            writeln!(out, "kappa,{}", format_rational(&sys.kappa()))?;
        }
        Command::Region { root, eta } => {
            let sys = root_system(root)?;
            let coords = eta
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            let inside = sys.in_bounded_region(&Covector::new(coords)).map_err(usage)?;
            writeln!(out, "{}", if inside { "inside" } else { "outside" })?;
        }
        Command::Iwasawa { matrix } => {
            let g = read_matrix(matrix)?;
            let f = iwasawa(&g).map_err(failure)?;
            write_matrix(out, &fmt, "k", &f.k)?;
            let h: Vec<String> = f.h.iter().map(|&x| fmt.f(x)).collect();
            writeln!(out, "h\n{}", h.join(" "))?;
            write_matrix(out, &fmt, "nu", &f.nu)?;
            writeln!(out, "reconstruction_error {}", fmt.f(frobenius_distance(&f.reconstruct(), g.matrix())))?;
        }
        Command::Kak { matrix } => {
            let g = read_matrix(matrix)?;
            let f = kak(&g).map_err(failure)?;
            write_matrix(out, &fmt, "k1", &f.k1)?;
            let a: Vec<String> = f.a_log.iter().map(|&x| fmt.f(x)).collect();
            writeln!(out, "a\n{}", a.join(" "))?;
            write_matrix(out, &fmt, "k2", &f.k2)?;
            writeln!(out, "reconstruction_error {}", fmt.f(frobenius_distance(&f.reconstruct(), g.matrix())))?;
        }
        Command::Spherical { group, xi, eta, points, scales, order, direction, samples } => {
            spherical(cli.seed, &fmt, out, *group, xi, eta.as_deref(), points, scales, *order, direction, *samples)?
        }
        Command::Decay { input, window, samples } => decay(&fmt, out, input, *window, *samples)?,
        Command::Holder { input, order, alpha, region, threshold } => {
            holder(&fmt, out, input, *order, alpha, region.as_deref(), *threshold)?
        }
        Command::Statphase { group, xi, y, scales } => statphase(&fmt, out, *group, *xi, *y, scales)?,
        Command::Expsum { fx, fy, ux, uy, m, n } => {
            let fx = parse_complex_list(fx)?;
            let fy = match fy {
                Some(s) => parse_complex_list(s)?,
                None => fx.clone(),
            };
            let mean = exp_sum_separation(&fx, &fy, &parse_list(ux)?, &parse_list(uy)?, *m, *n).map_err(usage)?;
            let half_norm: f64 = 0.5 * fx.iter().map(|z| z.norm_sqr()).sum::<f64>();
            writeln!(out, "mean,half_norm_sq")?;
            writeln!(out, "{},{}", fmt.f(mean), fmt.f(half_norm))?;
        }
        Command::Selftest { only } => {
            let outcomes = match only {
                Some(n) => vec![acceptance::run(*n, cli.seed).ok_or_else(|| usage(format!("no criterion {n}")))?],
                None => acceptance::run_all(cli.seed),
            };
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            writeln!(out, "{} passed, {failed} failed", outcomes.len() - failed)?;
            return Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILURE });
        }
    }
    Ok(EXIT_OK)
}

fn root_system(args: &RootArgs) -> Result<RootSystem, CliError> {
    let family: Family = args.family.parse().map_err(usage)?;
    let rank = match (args.rank, family.fixed_rank()) {
        (Some(r), _) => r,
        (None, Some(r)) => r,
        (None, None) => return Err(usage(format!("--rank is required for family {family}"))),
    };
    let mult = parse_mult_assignment(&args.mult).map_err(usage)?;
    build_root_system(family, rank, &mult).map_err(usage)
}

fn table(catalog: &str, format: TableFormat, out: &mut dyn Write) -> Result<i32, CliError> {
    let cat = load_catalog_path(catalog).map_err(failure)?;
    let rows = kappa_table(&cat);
    match format {
        TableFormat::Csv => writeln!(out, "id,group,rank,kappa,expected,status")?,
        TableFormat::Pretty => writeln!(out, "{:<18} {:<16} {:>4} {:>8} {:>8}  status", "id", "group", "rank", "kappa", "expected")?,
    }
    for r in &rows {
        let computed = r.computed_kappa.map_or_else(|| "-".to_string(), |k| format_rational(&k));
        let status = if r.matches { "ok" } else { "MISMATCH" };
        match format {
            TableFormat::Csv => writeln!(
                out,
                "{},{},{},{},{},{}",
                r.id,
                r.group_name.replace(',', ";"),
                r.rank,
                computed,
                format_rational(&r.expected_kappa),
                status
            )?,
            TableFormat::Pretty => writeln!(
                out,
                "{:<18} {:<16} {:>4} {:>8} {:>8}  {}{}",
                r.id,
                r.group_name,
                r.rank,
                computed,
                format_rational(&r.expected_kappa),
                status,
                r.error.as_ref().map_or(String::new(), |e| format!(" ({e})"))
            )?,
        }
    }
    Ok(if rows.iter().all(|r| r.matches) { EXIT_OK } else { EXIT_FAILURE })
}

fn read_matrix(path: &str) -> Result<SpecialLinearElement, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| failure(format!("cannot read `{path}`: {e}")))?;
    SpecialLinearElement::parse(&text).map_err(failure)
}

fn write_matrix(out: &mut dyn Write, fmt: &Fmt, name: &str, m: &DMatrix<f64>) -> Result<(), CliError> {
    writeln!(out, "{name}")?;
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|j| fmt.f(m[(i, j)])).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| usage(format!("bad number `{s}`"))))
        .collect()
}

fn parse_complex_list(text: &str) -> Result<Vec<Complex64>, CliError> {
    text.split(',')
        .map(|s| {
            let bad = || usage(format!("bad coefficient `{s}`, expected `re` or `re:im`"));
            let (re, im) = s.trim().split_once(':').unwrap_or((s.trim(), "0"));
            Ok(Complex64::new(re.parse().map_err(|_| bad())?, im.parse().map_err(|_| bad())?))
        })
        .collect()
}

fn scales(args: &ScaleArgs) -> Result<Vec<f64>, CliError> {
    if args.tsteps == 0 {
        return Err(usage("--tsteps must be at least 1"));
    }
    if !(args.tmin > 0.0 && args.tmax >= args.tmin && args.tmax.is_finite()) {
        return Err(usage("need 0 < tmin <= tmax"));
    }
    if args.tsteps == 1 {
        return Ok(vec![args.tmin]);
    }
    let ratio = args.tmax / args.tmin;
    let last = args.tsteps - 1;
    Ok((0..args.tsteps)
        .map(|k| if k == last { args.tmax } else { args.tmin * ratio.powf(k as f64 / last as f64) })
        .collect())
}

#[allow(clippy::too_many_arguments)]
fn spherical(
    seed: u64,
    fmt: &Fmt,
    out: &mut dyn Write,
    group: Group,
    xi: &str,
    eta: Option<&str>,
    points: &str,
    scale_args: &ScaleArgs,
    order: usize,
    direction: &str,
    samples: usize,
) -> Result<(), CliError> {
    let xi = parse_list(xi)?;
    let rank = if group == Group::Sl3 { 2 } else { 1 };
    let eta = match eta {
        Some(e) => parse_list(e)?,
        None => vec![0.0; rank],
    };
    if xi.len() != rank || eta.len() != rank {
        return Err(usage(format!("--xi and --eta need {rank} component(s) for this group")));
    }
    if order > 0 && group != Group::Sl2 {
        return Err(usage("--order is only supported for sl2"));
    }
    let lambda = SpectralParameter::new(xi.clone(), eta).map_err(usage)?;
    let ys = parse_list(points)?;
    let ts = scales(scale_args)?;
    let dir = parse_list(direction)?;
    if dir.len() != 2 {
        return Err(usage("--direction needs two components"));
    }
    writeln!(out, "t,Y,re,im,err")?;
    for &t in &ts {
        for &y in &ys {
            let (value, error) = match group {
                Group::Sl2 => {
                    let v = if order == 0 {
                        let scaled = SpectralParameter::rank1(t * lambda.xi[0], lambda.eta[0]);
                        spherical_sl2(&scaled, y)
                    } else {
                        deriv_spherical_sl2(&lambda, t, y, order)
                    }
                    .map_err(failure)?;
                    (v.value, v.estimated_error)
                }
                Group::Sl3 => {
                    let scaled = SpectralParameter::new(lambda.xi.iter().map(|x| t * x).collect(), lambda.eta.clone())
                        .map_err(usage)?;
                    let v = spherical_sl3(&scaled, [y * dir[0], y * dir[1]], samples, seed).map_err(usage)?;
                    (v.value, v.estimated_error)
                }
                Group::Su2 => {
                    let n = (t * lambda.xi[0]).round();
                    if n < 0.0 {
                        return Err(usage("su2 degree t·xi must be non-negative"));
                    }
                    (Complex64::new(spherical_compact_su2(n as u64, y).map_err(usage)?, 0.0), 0.0)
                }
            };
            writeln!(out, "{},{},{},{},{}", fmt.f(t), fmt.f(y), fmt.f(value.re), fmt.f(value.im), fmt.f(error))?;
        }
    }
    Ok(())
}

struct Sample {
    t: f64,
    y: f64,
    value: Complex64,
}

fn read_samples(path: &str) -> Result<Vec<Sample>, CliError> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| failure(format!("cannot read `{path}`: {e}")))?;
    let headers = reader.headers().map_err(failure)?.clone();
    let col = |name: &str| {
        headers
            .iter()
            .position(|h| h.trim() == name)
            .ok_or_else(|| usage(format!("`{path}` has no `{name}` column")))
    };
    let (ti, yi, re, im) = (col("t")?, col("Y")?, col("re")?, col("im")?);
    let mut out = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(failure)?;
        let get = |i: usize| -> Result<f64, CliError> {
            record
                .get(i)
                .and_then(|v| v.trim().parse().ok())
                .ok_or_else(|| failure(format!("`{path}` row {}: bad number", line + 2)))
        };
        out.push(Sample { t: get(ti)?, y: get(yi)?, value: Complex64::new(get(re)?, get(im)?) });
    }
    Ok(out)
}

/// Key that orders f64 values for grouping; inputs are finite.
fn key(x: f64) -> i64 {
    let bits = x.to_bits() as i64;
    if bits < 0 {
        i64::MIN - bits
    } else {
        bits
    }
}

fn decay(fmt: &Fmt, out: &mut dyn Write, input: &str, window: usize, per_sample: bool) -> Result<(), CliError> {
    if window == 0 {
        return Err(usage("--window must be at least 1"));
    }
    let samples = read_samples(input)?;
    let mut by_y: BTreeMap<i64, Vec<(f64, f64)>> = BTreeMap::new();
    for s in &samples {
        by_y.entry(key(s.y)).or_default().push((s.t, s.value.norm()));
    }
    if per_sample {
        writeln!(out, "Y,t,magnitude,fitted")?;
    } else {
        writeln!(out, "Y,samples,slope,intercept,r_squared")?;
    }
    for (k, mut points) in by_y {
        let y = samples.iter().find(|s| key(s.y) == k).expect("group is non-empty").y;
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        let reduced: Vec<(f64, f64)> = points
            .chunks(window)
            .filter(|c| c.len() == window)
            .map(|c| *c.iter().max_by(|a, b| a.1.total_cmp(&b.1)).expect("non-empty chunk"))
            .collect();
        let fit = decay_fit(&reduced).map_err(|e| failure(format!("Y = {y}: {e}")))?;
        if per_sample {
            for &(t, m) in &fit.samples {
                let fitted = (fit.intercept + fit.slope * t.ln()).exp();
                writeln!(out, "{},{},{},{}", fmt.f(y), fmt.f(t), fmt.f(m), fmt.f(fitted))?;
            }
        } else {
            writeln!(
                out,
                "{},{},{},{},{}",
                fmt.f(y),
                fit.samples.len(),
                fmt.f(fit.slope),
                fmt.f(fit.intercept),
                fmt.f(fit.r_squared)
            )?;
        }
    }
    Ok(())
}

fn holder(
    fmt: &Fmt,
    out: &mut dyn Write,
    input: &str,
    order: usize,
    alphas: &str,
    region: Option<&str>,
    threshold: f64,
) -> Result<(), CliError> {
    let alphas = parse_list(alphas)?;
    let samples = read_samples(input)?;
    let mut by_t: BTreeMap<i64, Vec<(f64, Complex64)>> = BTreeMap::new();
    for s in &samples {
        by_t.entry(key(s.t)).or_default().push((s.y, s.value));
    }
    let mut grid: Option<Vec<f64>> = None;
    let mut family = Vec::new();
    for (k, mut rows) in by_t {
        let t = samples.iter().find(|s| key(s.t) == k).expect("group is non-empty").t;
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        let ys: Vec<f64> = rows.iter().map(|r| r.0).collect();
        match &grid {
            None => grid = Some(ys),
            Some(g) if *g != ys => return Err(failure(format!("t = {t} is sampled on a different Y grid"))),
            Some(_) => {}
        }
        family.push((t, rows.into_iter().map(|r| r.1).collect::<Vec<_>>()));
    }
    let grid = grid.ok_or_else(|| failure(format!("`{input}` has no rows")))?;
    let region = match region {
        Some(r) => match parse_list(r)?.as_slice() {
            [lo, hi] => (*lo, *hi),
            _ => return Err(usage("--region needs lo,hi")),
        },
        None => (grid[0], grid[grid.len() - 1]),
    };
    writeln!(out, "alpha,order,t,sup_quotient,growth_ratio,verdict")?;
    for alpha in alphas {
        let report = holder_estimate(&grid, &family, order, alpha, region, threshold).map_err(failure)?;
        let verdict = format!("{:?}", report.verdict).to_lowercase();
        for (t, q) in report.family_params.iter().zip(&report.sup_quotients) {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                fmt.f(alpha),
                order,
                fmt.f(*t),
                fmt.f(*q),
                fmt.f(report.growth_ratio),
                verdict
            )?;
        }
    }
    Ok(())
}

fn statphase(fmt: &Fmt, out: &mut dyn Write, group: StatGroup, xi: f64, y: f64, scale_args: &ScaleArgs) -> Result<(), CliError> {
    let ts = scales(scale_args)?;
    writeln!(out, "t,quad_re,quad_im,lead_re,lead_im,abs_err")?;
    for t in ts {
        let (quad, lead) = match group {
            StatGroup::Sl2 => {
                let q = spherical_sl2(&SpectralParameter::rank1(t * xi, 0.0), y).map_err(failure)?.value;
                let l = leading_term_sl2(xi, y, t, sl2_spherical_amplitude(y)).map_err(usage)?.total;
                (q, l)
            }
            StatGroup::Su2 => {
                let n = (t * xi).round();
                if n < 0.0 {
                    return Err(usage("su2 degree t·xi must be non-negative"));
                }
                let q = spherical_compact_su2(n as u64, y).map_err(usage)?;
                let l = leading_term_su2(n as u64, y).map_err(usage)?.total;
                (Complex64::new(q, 0.0), l)
            }
        };
        writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt.f(t),
            fmt.f(quad.re),
            fmt.f(quad.im),
            fmt.f(lead.re),
            fmt.f(lead.im),
            fmt.f((quad - lead).norm())
        )?;
    }
    Ok(())
}

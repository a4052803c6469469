use clap::{Args, Parser, Subcommand};
use mfbergman::io::{fmt_g17, read_density, read_grid_function, sniff_header, write_density, write_grid_function};
use mfbergman::lang;
use mfbergman::toeplitz::{
    apply_toeplitz, boundedness_and_spectrum, gamma_of_symbol, toeplitz_direct_p2q2, LogSweep, SpectrumReport,
    VerticalSymbol,
};
use mfbergman::transforms::{pw_analyze, pw_synthesize, u1_forward};
use mfbergman::verify::{run_suite, Suite, VerifyConfig};
use mfbergman::{
    lq_norm, mixed_norm, BoundaryDensity, DensityForm, Error, GridFunction, HalfPlaneGrid, Repr, SpaceParams,
};
use serde_json::{json, Map, Number, Value};
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Mixed-norm Bergman spaces on the upper half-plane: spectral functions,
/// Paley-Wiener transforms, Toeplitz operators and self-checks.
#[derive(Parser, Debug)]
#[command(name = "mfbergman", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Weight exponent λ > -1.
    #[arg(long, global = true, default_value_t = 0.0, allow_negative_numbers = true)]
    lambda: f64,
    /// Vertical exponent p ≥ 1.
    #[arg(long, global = true, default_value_t = 2.0)]
    p: f64,
    /// Horizontal exponent q ≥ 1.
    #[arg(long, global = true, default_value_t = 2.0)]
    q: f64,
    /// x_halfwidth,n_x,y_max,n_y,grading
    #[arg(long, global = true, default_value = "40,1024,40,512,2")]
    grid: String,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Tolerance override for `verify`.
    #[arg(long, global = true)]
    tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate the spectral function γ on a log grid (CSV `x,gamma`).
    Gamma {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 1e-3)]
        x_min: f64,
        #[arg(long, default_value_t = 1e3)]
        x_max: f64,
        #[arg(long, default_value_t = 61)]
        n: usize,
    },
    /// Boundedness and spectrum of a Toeplitz operator (JSON).
    Spectrum {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 1e-3)]
        x_min: f64,
        #[arg(long, default_value_t = 1e3)]
        x_max: f64,
        #[arg(long, default_value_t = 40)]
        per_decade: usize,
    },
    /// Synthesize the analytic function of a boundary density (grid CSV).
    Synth {
        #[arg(long)]
        density: String,
    },
    /// Recover the boundary density of a grid CSV (density CSV).
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// Norm of a density CSV (L^q) or grid CSV (mixed norm of its Fourier side).
    Norm {
        #[arg(long)]
        input: PathBuf,
        /// Take the mixed norm of the grid values as stored.
        #[arg(long)]
        raw: bool,
    },
    /// Apply a Toeplitz operator to a boundary density (density CSV).
    ToeplitzApply {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        density: String,
        /// Realize the operator on the half-plane grid (p = q = 2 only).
        #[arg(long)]
        direct: bool,
    },
    /// Run a self-check suite: specfun, transforms, toeplitz or all (JSON).
    Verify { suite: String },
}

enum Failure {
    Usage(String),
    Numeric(String),
    Tolerance,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFinite(_) | Error::NoConvergence { .. } | Error::GridMismatch(_) => {
                Failure::Numeric(e.to_string())
            }
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Tolerance) => ExitCode::from(1),
        Err(Failure::Numeric(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Gamma { symbol, x_min, x_max, n } => cmd_gamma(g, symbol, *x_min, *x_max, *n),
        Command::Spectrum {
            symbol,
            x_min,
            x_max,
            per_decade,
        } => cmd_spectrum(
            g,
            symbol,
            LogSweep {
                lo: *x_min,
                hi: *x_max,
                per_decade: *per_decade,
            },
        ),
        Command::Synth { density } => cmd_synth(g, density),
        Command::Analyze { input } => cmd_analyze(g, input),
        Command::Norm { input, raw } => cmd_norm(g, input, *raw),
        Command::ToeplitzApply { symbol, density, direct } => cmd_toeplitz_apply(g, symbol, density, *direct),
        Command::Verify { suite } => cmd_verify(g, suite),
    }
}

fn params(g: &Global) -> Result<SpaceParams, Failure> {
    Ok(SpaceParams::new(g.lambda, g.p, g.q)?)
}

fn grid(g: &Global) -> Result<HalfPlaneGrid, Failure> {
    let parts: Vec<&str> = g.grid.split(',').map(str::trim).collect();
    let bad = || Failure::Usage(format!("--grid expects x_halfwidth,n_x,y_max,n_y,grading, got '{}'", g.grid));
    if parts.len() != 5 {
        return Err(bad());
    }
    let f = |s: &str| s.parse::<f64>().map_err(|_| bad());
    let n = |s: &str| s.parse::<usize>().map_err(|_| bad());
    Ok(HalfPlaneGrid::new(
        f(parts[0])?,
        n(parts[1])?,
        f(parts[2])?,
        n(parts[3])?,
        f(parts[4])?,
    )?)
}

fn output(g: &Global) -> Result<Box<dyn Write>, Failure> {
    Ok(match &g.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn symbol(spec: &str) -> Result<VerticalSymbol, Failure> {
    Ok(spec.parse::<VerticalSymbol>()?)
}

/// A density spec, or `csv(path)` naming a density file.
fn density(spec: &str, grid: &HalfPlaneGrid) -> Result<BoundaryDensity, Failure> {
    let expr = lang::parse(spec)?;
    if let [call] = expr.factors.as_slice() {
        if call.name == "csv" {
            if call.args.len() != 1 {
                return Err(call.arity_error("1").into());
            }
            return Ok(read_density(open(Path::new(&call.args[0].text))?)?);
        }
    }
    let form: DensityForm = spec.parse()?;
    Ok(BoundaryDensity::on_lattice(form, grid)?)
}

fn warn(warnings: &[String], clamped: usize) {
    for w in warnings {
        eprintln!("warning: {w}");
    }
    if clamped > 0 {
        eprintln!("warning: {clamped} interpolation points fell beyond y_max and were set to 0");
    }
}

fn cmd_gamma(g: &Global, spec: &str, x_min: f64, x_max: f64, n: usize) -> CmdResult {
    let a = symbol(spec)?;
    let params = params(g)?;
    if !(x_min > 0.0 && x_max > x_min && x_max.is_finite()) || n < 2 {
        return Err(Failure::Usage(format!(
            "need 0 < x-min < x-max and n >= 2, got [{x_min}, {x_max}], n = {n}"
        )));
    }
    a.check_integrability(&params)?;
    let (lo, hi) = (x_min.log10(), x_max.log10());
    let rows = (0..n)
        .map(|k| {
            let x = match k {
                0 => x_min,
                k if k == n - 1 => x_max,
                k => 10f64.powf(lo + (hi - lo) * k as f64 / (n - 1) as f64),
            };
            Ok((x, gamma_of_symbol(&a, &params, x)?))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut out = output(g)?;
    writeln!(out, "x,gamma")?;
    for (x, v) in rows {
        writeln!(out, "{},{}", fmt_g17(x), fmt_g17(v))?;
    }
    out.flush()?;
    Ok(())
}

fn number(v: f64) -> Value {
    if !v.is_finite() {
        return Value::String(if v.is_nan() { "nan" } else if v > 0.0 { "inf" } else { "-inf" }.into());
    }
    if v.fract() == 0.0 && v.abs() < 9.007_199_254_740_992e15 {
        return Value::Number(Number::from(v as i64));
    }
    Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}

fn spectrum_json(r: &SpectrumReport) -> Value {
    let mut m = Map::new();
    m.insert("bounded".into(), Value::Bool(r.bounded));
    m.insert("sup_abs".into(), number(r.sup_abs));
    m.insert(
        "range_components".into(),
        Value::Array(
            r.range_components
                .iter()
                .map(|(lo, hi)| Value::Array(vec![number(*lo), number(*hi)]))
                .collect(),
        ),
    );
    m.insert("limits".into(), Value::Array(vec![number(r.limits.0), number(r.limits.1)]));
    m.insert(
        "caveats".into(),
        Value::Array(r.caveats.iter().cloned().map(Value::String).collect()),
    );
    Value::Object(m)
}

fn cmd_spectrum(g: &Global, spec: &str, sweep: LogSweep) -> CmdResult {
    let a = symbol(spec)?;
    let report = boundedness_and_spectrum(&a, &params(g)?, sweep)?;
    let mut out = output(g)?;
    writeln!(out, "{}", spectrum_json(&report))?;
    out.flush()?;
    Ok(())
}

fn cmd_synth(g: &Global, spec: &str) -> CmdResult {
    let grid = grid(g)?;
    let phi = density(spec, &grid)?;
    let f = pw_synthesize(&phi, &params(g)?, &grid)?;
    write_grid_function(&f, output(g)?)?;
    Ok(())
}

fn cmd_analyze(g: &Global, input: &Path) -> CmdResult {
    let f = read_grid_function(open(input)?, Repr::Physical)?;
    let (phi, diag) = pw_analyze(&f, &params(g)?)?;
    warn(&diag.warnings, diag.clamped_points);
    write_density(&phi, output(g)?)?;
    Ok(())
}

fn cmd_norm(g: &Global, input: &Path, raw: bool) -> CmdResult {
    let params = params(g)?;
    let header = sniff_header(open(input)?)?;
    let value = if header.first().map(String::as_str) == Some("xi") {
        lq_norm(&read_density(open(input)?)?, params.q())?
    } else {
        let f: GridFunction = read_grid_function(open(input)?, Repr::Physical)?;
        if raw {
            mixed_norm(&f, &params)?
        } else {
            mixed_norm(&u1_forward(&f)?, &params)?
        }
    };
    let mut out = output(g)?;
    writeln!(out, "{}", fmt_g17(value))?;
    out.flush()?;
    Ok(())
}

fn cmd_toeplitz_apply(g: &Global, sym: &str, spec: &str, direct: bool) -> CmdResult {
    let a = symbol(sym)?;
    let params = params(g)?;
    let grid = grid(g)?;
    let phi = density(spec, &grid)?;
    let result = if direct {
        let (r, diag) = toeplitz_direct_p2q2(&a, &phi, &params, &grid)?;
        warn(&diag.warnings, diag.clamped_points);
        r
    } else {
        apply_toeplitz(&a, &phi, &params)?
    };
    write_density(&result, output(g)?)?;
    Ok(())
}

fn cmd_verify(g: &Global, suite: &str) -> CmdResult {
    let suite: Suite = suite.parse()?;
    let config = VerifyConfig {
        grid: grid(g)?,
        tolerance: g.tol,
    };
    let checks = run_suite(suite, &config)?;
    let passed = checks.iter().all(|c| c.passed);
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "suite": c.suite,
                "name": c.name,
                "residual": number(c.residual),
                "tolerance": number(c.tolerance),
                "passed": c.passed,
            })
        })
        .collect();
    let report = json!({ "suite": suite.name(), "passed": passed, "checks": rows });
    let mut out = output(g)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"))?;
    out.flush()?;
    if passed {
        Ok(())
    } else {
        Err(Failure::Tolerance)
    }
}

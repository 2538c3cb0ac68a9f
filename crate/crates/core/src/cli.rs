//! The `foldquad` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 I/O or numerical error. `FOLDQUAD_TOL` overrides the default exactness
//! tolerance of `verify` and `mehler`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::basis::clenshaw;
use crate::dyadic::{dyadic_angle, DyadicLevel};
use crate::error::Error;
use crate::oracle::{self, ChebyshevMoments, WeightedOracle};
use crate::quadrature::{
    self, default_max_degree, mehler_nodes, minimal_rule, unfold_seed, validate_closure, QuadratureRule,
    DEFAULT_EXACTNESS_TOL,
};
use crate::rule_file::{format_node, write_csv, RuleRecord};
use crate::weights::{BlackBoxWeight, WeightFamily, BUILTIN_FAMILIES, MEMBERSHIP_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Environment variable overriding the default exactness tolerance.
pub const TOL_ENV: &str = "FOLDQUAD_TOL";

/// Node-for-node agreement required between Mehler and minimal rules.
const MEHLER_MATCH_TOL: f64 = 1e-13;

/// Closure residual accepted by `verify`.
const CLOSURE_TOL: f64 = 1e-11;

/// Random integrands used by the fold-identity spot check in `verify`.
const FOLD_SAMPLES: usize = 5;

#[derive(Parser, Debug)]
#[command(name = "foldquad", version)]
#[command(about = "Equal-weight quadrature rules for the weight classes W_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a rule by unfolding seed angles
    Gen {
        /// Class index n (rules have 2^(n-1) nodes for the minimal seed)
        #[arg(long)]
        n: usize,
        /// chebyshev | half | angle-poly:c0,c1,... | angle-bump:center,width | table:<path>
        #[arg(long)]
        weight: String,
        /// `minimal` or `angles:<comma-separated radians in (0, pi/2^n]>`
        #[arg(long, default_value = "minimal")]
        seed: String,
        /// Output file
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a rule file against the oracle
    Verify {
        #[arg(long)]
        rule: PathBuf,
        /// Relative exactness tolerance (default 1e-9, or $FOLDQUAD_TOL)
        #[arg(long)]
        tol: Option<f64>,
        /// Highest degree to sweep (default 2m + 8)
        #[arg(long)]
        max_degree: Option<usize>,
        /// Seed for the randomized fold-identity check
        #[arg(long, default_value_t = 0)]
        rng_seed: u64,
    },
    /// Check Mehler's rule for the Chebyshev weight
    Mehler {
        #[arg(long)]
        m: usize,
        /// Relative exactness tolerance (default 1e-9, or $FOLDQUAD_TOL)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// List built-in weights or check a density for membership in W_n
    Weights {
        #[arg(long, conflicts_with = "check")]
        list: bool,
        #[arg(long, requires = "n")]
        check: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn io(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_IO,
            message: e.to_string(),
        }
    }

    /// Library errors: bad input is a usage error, the rest are I/O-numeric.
    fn from_lib(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::NonConvergence { .. } => Self::io(e),
            _ => Self::usage(e),
        }
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    let env_tol = std::env::var(TOL_ENV).ok();
    let result = match env_tol.as_deref().map(parse_tol).transpose() {
        Err(f) => Err(f),
        Ok(env_tol) => dispatch(cli.command, env_tol, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn parse_tol(s: &str) -> std::result::Result<f64, Failure> {
    match s.trim().parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(Failure::usage(format!("{TOL_ENV}=`{s}` is not a positive real"))),
    }
}

fn dispatch(cmd: Command, env_tol: Option<f64>, out: &mut dyn Write) -> CmdResult {
    let default_tol = env_tol.unwrap_or(DEFAULT_EXACTNESS_TOL);
    match cmd {
        Command::Gen {
            n,
            weight,
            seed,
            out: path,
            format,
        } => cmd_gen(n, &weight, &seed, path, format, out),
        Command::Verify {
            rule,
            tol,
            max_degree,
            rng_seed,
        } => cmd_verify(rule, tol.unwrap_or(default_tol), max_degree, rng_seed, out),
        Command::Mehler { m, tol } => cmd_mehler(m, tol.unwrap_or(default_tol), out),
        Command::Weights { list, check, n } => cmd_weights(list, check, n, out),
    }
}

fn emit(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> std::result::Result<(), Failure> {
    out.write_fmt(text).map_err(Failure::io)
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        emit($out, format_args!("{}\n", format_args!($($arg)*)))?
    };
}

fn parse_seed(seed: &str, level: &DyadicLevel) -> std::result::Result<Vec<f64>, Failure> {
    if seed == "minimal" {
        return Ok(vec![dyadic_angle(level.n())]);
    }
    let Some(list) = seed.strip_prefix("angles:") else {
        return Err(Failure::usage(format!(
            "seed must be `minimal` or `angles:<csv>`, got `{seed}`"
        )));
    };
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("seed angle `{t}` is not a number")))
        })
        .collect()
}

fn cmd_gen(
    n: usize,
    weight: &str,
    seed: &str,
    path: Option<PathBuf>,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    let level = DyadicLevel::new(n).map_err(Failure::usage)?;
    let family = WeightFamily::parse(weight).map_err(Failure::usage)?;
    let spec = family.build(n).map_err(Failure::from_lib)?;
    let seeds = parse_seed(seed, &level)?;
    let ns = unfold_seed(&level, &seeds).map_err(Failure::usage)?;
    let closure = validate_closure(&ns, &level);
    let rule = QuadratureRule::new(ns, spec).map_err(Failure::usage)?;

    say!(
        out,
        "n = {n}, weight = {}, m = {}",
        rule.weight().label(),
        rule.m()
    );
    say!(
        out,
        "node range = [{}, {}]",
        format_node(rule.nodes()[0]),
        format_node(*rule.nodes().last().expect("non-empty"))
    );
    say!(out, "closure residual = {closure:e}");
    for (i, &x) in rule.nodes().iter().enumerate() {
        say!(out, "  t_{} = {}", i + 1, format_node(x));
    }
    if let Some(path) = path {
        match format {
            Format::Json => RuleRecord::from_rule(&rule, closure).write_json(&path),
            Format::Csv => write_csv(&rule, &path),
        }
        .map_err(Failure::io)?;
        say!(out, "wrote {}", path.display());
    }
    Ok(EXIT_OK)
}

/// Everything `verify` measures about a rule.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub n: usize,
    pub m: usize,
    pub degree: Option<usize>,
    pub guaranteed: usize,
    pub witness: (f64, f64),
    pub membership_residual: f64,
    pub closure_residual: f64,
    pub fold_identity_residual: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.degree.is_some_and(|d| d >= self.guaranteed) && self.membership_residual <= MEMBERSHIP_TOL
    }
}

/// Runs the checks behind `verify` on an in-memory rule.
pub fn verify_rule(
    rule: &QuadratureRule,
    tol: f64,
    max_degree: Option<usize>,
    rng_seed: u64,
) -> crate::Result<VerifyReport> {
    let spec = rule.weight();
    let level = DyadicLevel::new(spec.n())?;
    let oracle = WeightedOracle::new(spec, oracle::DEFAULT_TOL);
    let d_max = max_degree.unwrap_or_else(|| default_max_degree(rule.m()));
    let degree = quadrature::degree_of_exactness(rule, &oracle, tol, d_max)?;
    let witness = quadrature::gauss_bound_witness(rule, &oracle)?;
    let membership_residual = BlackBoxWeight::from_spec(spec).membership_residual(&level)?;
    let closure_residual = validate_closure(rule.node_set(), &level);

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut fold_identity_residual = 0.0f64;
    for _ in 0..FOLD_SAMPLES {
        let coeffs: Vec<f64> = (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let scale: f64 = rng.gen_range(0.5..2.0);
        let f = |x: f64| clenshaw(&coeffs, x) + (scale * x).exp();
        let direct = oracle::integrate_weighted(spec, f, oracle::DEFAULT_TOL)?.value;
        let folded = oracle::fold_integrate(spec, f, oracle::DEFAULT_TOL)?.value;
        fold_identity_residual = fold_identity_residual.max((direct - folded).abs() / (1.0 + direct.abs()));
    }
    Ok(VerifyReport {
        n: spec.n(),
        m: rule.m(),
        degree,
        guaranteed: level.guaranteed_degree(),
        witness,
        membership_residual,
        closure_residual,
        fold_identity_residual,
    })
}

fn cmd_verify(
    path: PathBuf,
    tol: f64,
    max_degree: Option<usize>,
    rng_seed: u64,
    out: &mut dyn Write,
) -> CmdResult {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::usage(format!("tolerance must be positive, got {tol}")));
    }
    let record = RuleRecord::read_json(&path).map_err(Failure::io)?;
    let rule = record.to_rule().map_err(Failure::io)?;
    let report = verify_rule(&rule, tol, max_degree, rng_seed).map_err(Failure::io)?;

    say!(
        out,
        "rule = {}, n = {}, m = {}, weight = {}",
        path.display(),
        report.n,
        report.m,
        record.weight
    );
    say!(out, "rng seed = {rng_seed}, tol = {tol:e}");
    match report.degree {
        Some(d) => say!(out, "measured degree = {d}"),
        None => say!(out, "measured degree = none (T_0 not reproduced)"),
    }
    say!(out, "guaranteed degree 2^n - 1 = {}", report.guaranteed);
    say!(
        out,
        "degree-{} witness: oracle = {:e}, rule = {:e}",
        2 * report.m,
        report.witness.0,
        report.witness.1
    );
    let member = report.membership_residual <= MEMBERSHIP_TOL;
    say!(
        out,
        "membership residual = {:e} ({})",
        report.membership_residual,
        if member { "in W_n" } else { "NOT in W_n" }
    );
    let closed = report.closure_residual <= CLOSURE_TOL;
    say!(
        out,
        "closure residual = {:e} ({})",
        report.closure_residual,
        if closed { "closed" } else { "NOT closed" }
    );
    say!(
        out,
        "fold identity residual = {:e}",
        report.fold_identity_residual
    );
    if report.passed() {
        say!(out, "PASS");
        Ok(EXIT_OK)
    } else {
        say!(out, "FAIL");
        Ok(EXIT_VERIFY_FAILED)
    }
}

fn cmd_mehler(m: usize, tol: f64, out: &mut dyn Write) -> CmdResult {
    if m < 1 {
        return Err(Failure::usage("m must be at least 1"));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::usage(format!("tolerance must be positive, got {tol}")));
    }
    let nodes = mehler_nodes(m);
    let expected = 2 * m - 1;
    let degree = quadrature::exactness_degree(&nodes, &ChebyshevMoments, tol, default_max_degree(m))
        .map_err(Failure::from_lib)?;
    say!(out, "mehler m = {m}");
    for (i, &x) in nodes.iter().enumerate() {
        say!(out, "  t_{} = {}", i + 1, format_node(x));
    }
    match degree {
        Some(d) => say!(out, "measured degree = {d} (expected {expected})"),
        None => say!(out, "measured degree = none (expected {expected})"),
    }
    let mut ok = degree == Some(expected);
    if m.is_power_of_two() {
        let n = m.trailing_zeros() as usize + 1;
        let level = DyadicLevel::new(n).map_err(Failure::usage)?;
        let spec = WeightFamily::Chebyshev.build(n).map_err(Failure::from_lib)?;
        let rule = minimal_rule(&level, &spec).map_err(Failure::from_lib)?;
        let gap = nodes
            .iter()
            .zip(rule.nodes())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        let matches = rule.m() == m && gap <= MEHLER_MATCH_TOL;
        say!(
            out,
            "minimal W_{n} rule: max node difference = {gap:e} ({})",
            if matches { "match" } else { "MISMATCH" }
        );
        ok &= matches;
    } else {
        say!(out, "m is not a power of two; no W_n counterpart");
    }
    say!(out, "{}", if ok { "PASS" } else { "FAIL" });
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_weights(list: bool, check: Option<String>, n: Option<usize>, out: &mut dyn Write) -> CmdResult {
    if let Some(spec) = check {
        let n = n.ok_or_else(|| Failure::usage("--check needs --n"))?;
        let level = DyadicLevel::new(n).map_err(Failure::usage)?;
        let family = WeightFamily::parse(&spec).map_err(Failure::usage)?;
        let density = family.black_box(n).map_err(Failure::from_lib)?;
        let residual = density.membership_residual(&level).map_err(Failure::from_lib)?;
        let tail = density
            .tail_mass(oracle::DEFAULT_TOL)
            .map_err(Failure::from_lib)?;
        let member = residual <= MEMBERSHIP_TOL;
        say!(out, "weight = {family}, n = {n}");
        say!(out, "membership residual = {residual:e}");
        say!(
            out,
            "tail mass = {tail:.15} (2^-n = {:.15})",
            1.0 / (1u64 << n) as f64
        );
        say!(
            out,
            "{}",
            if member {
                format!("in W_{n}")
            } else {
                format!("NOT in W_{n}")
            }
        );
        return Ok(if member { EXIT_OK } else { EXIT_VERIFY_FAILED });
    }
    if list {
        for (name, about) in BUILTIN_FAMILIES {
            say!(out, "{name:<26} {about}");
        }
        say!(
            out,
            "{:<26} {}",
            "table:<path>",
            "CSV with header theta,w covering [0, pi/2^n]"
        );
        return Ok(EXIT_OK);
    }
    Err(Failure::usage("weights needs --list or --check <spec> --n <int>"))
}

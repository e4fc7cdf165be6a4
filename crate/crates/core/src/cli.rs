//! Command-line front end.
//!
//! Exit codes: 0 success, 1 an inequality or ordering check failed, 2 usage
//! or input error, 3 the instance does not meet the theorem's hypotheses.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bounds::{BoundParams, TheoremId};
use crate::complex_poly::Complex;
use crate::error::{Error, Result};
use crate::rational::{Instance, DEFAULT_POLE_MARGIN};
use crate::report::{serialize_report, Format, Payload, ReportEnvelope};
use crate::verify::campaign::fuzz_campaign;
use crate::verify::compare::{compare_factors, CHAINS};
use crate::verify::generator::{generate_instance_at, GeneratorConfig};
use crate::verify::grid::CircleGrid;
use crate::verify::lemmas::lemma_sweep;
use crate::verify::limit::{default_beta_sweep, limit_sweep};
use crate::verify::sharpness::{sharpness_check, ExtremalFamily, FamilyKind};
use crate::verify::theorem::{verify_theorem, Status, VerifyPolicy};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ratgrow", version, about = "Growth bounds for polynomials and rational functions with prescribed poles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Text => Format::Text,
        }
    }
}

#[derive(Debug, Args)]
struct Output {
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Number of equally spaced points on the unit circle.
    #[arg(long, default_value_t = 4096)]
    grid: usize,
    #[arg(long, default_value_t = 60)]
    refine_iters: usize,
}

impl GridArgs {
    fn grid(&self) -> Result<CircleGrid> {
        CircleGrid::new(self.grid, self.refine_iters)
    }
}

#[derive(Debug, Args)]
struct EtaArgs {
    /// Radius factor in [0, 1]; repeatable.
    #[arg(long, value_parser = parse_eta)]
    eta: Vec<f64>,
    /// Inclusive sweep `start:stop:step`.
    #[arg(long, value_parser = parse_sweep, conflicts_with = "eta")]
    eta_sweep: Option<Vec<f64>>,
}

impl EtaArgs {
    fn values(&self) -> Option<Vec<f64>> {
        match (&self.eta_sweep, self.eta.is_empty()) {
            (Some(s), _) => Some(s.clone()),
            (None, false) => Some(self.eta.clone()),
            (None, true) => None,
        }
    }

    fn values_or_default(&self) -> Vec<f64> {
        self.values().unwrap_or_else(default_eta_set)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one theorem on one instance at one η.
    Verify {
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        #[command(flatten)]
        eta: EtaArgs,
        /// Zero-exclusion radius; defaults to the instance's k, then 1.
        #[arg(long)]
        k: Option<f64>,
        /// Outer radius for the maximum-modulus bound.
        #[arg(long, default_value_t = 1.0)]
        nu: f64,
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_POLE_MARGIN)]
        pole_margin: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Seeded randomized search for counterexamples.
    Fuzz {
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, env = "RATGROW_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        eta: EtaArgs,
        #[arg(long, default_value_t = DEFAULT_POLE_MARGIN)]
        pole_margin: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Tabulate factors of several theorems on one instance.
    Compare {
        /// Repeatable; defaults to both sharpening chains.
        #[arg(long, value_parser = parse_theorem)]
        theorem: Vec<TheoremId>,
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        eta: EtaArgs,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Check an extremal family attains a polynomial bound.
    Sharpness {
        #[arg(long, value_parser = parse_family)]
        family: FamilyKind,
        #[arg(long, value_parser = parse_theorem)]
        theorem: TheoremId,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, value_parser = parse_eta, default_value_t = 0.5)]
        eta: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Rational factor versus polynomial factor as a repeated pole recedes.
    Limit {
        /// Numerator source; a generated polynomial is used when absent.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_parser = parse_eta, default_value_t = 0.5)]
        eta: f64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        /// Repeatable; defaults to 10, 10², …, 10⁸.
        #[arg(long)]
        beta_modulus: Vec<f64>,
        #[arg(long, env = "RATGROW_SEED", default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        grid: GridArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Random sweep of the two product lemmas.
    Lemmas {
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        #[arg(long, env = "RATGROW_SEED", default_value_t = 0)]
        seed: u64,
        /// Largest number of factors per sample.
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_theorem(s: &str) -> std::result::Result<TheoremId, String> {
    s.parse().map_err(|_| {
        let tags: Vec<&str> = TheoremId::ALL.iter().map(|t| t.tag()).collect();
        format!("unknown theorem tag '{s}' (expected one of {})", tags.join(", "))
    })
}

fn parse_family(s: &str) -> std::result::Result<FamilyKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_eta(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("eta = {v} must lie in [0, 1]"))
    }
}

/// Sweep values are rounded to 12 decimals so `0:1:0.1` yields the literals
/// 0.3, 0.7, ... rather than accumulated sums.
fn parse_sweep(s: &str) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(format!("'{s}' is not start:stop:step"));
    };
    let (a, b) = (parse_eta(a)?, parse_eta(b)?);
    let step: f64 = step.parse().map_err(|_| format!("step '{step}' is not a number"))?;
    if !(step > 0.0) || !step.is_finite() {
        return Err(format!("step {step} must be positive"));
    }
    if b < a {
        return Err(format!("stop {b} is below start {a}"));
    }
    let count = ((b - a) / step + 1e-9).floor() as usize + 1;
    Ok((0..count)
        .map(|i| format!("{:.12}", a + i as f64 * step).parse::<f64>().expect("formatted float"))
        .map(|v| v.min(1.0))
        .collect())
}

/// `{0, 0.1, …, 1}`.
pub fn default_eta_set() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Instance::from_json(&text)
}

struct Outcome {
    config: Value,
    payload: Payload,
    code: i32,
}

fn run_command(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Verify { theorem, eta, k, nu, instance, pole_margin, grid, .. } => {
            let etas = eta.values().ok_or_else(|| Error::Params("verify needs --eta".into()))?;
            let [eta] = etas.as_slice() else {
                return Err(Error::Params(format!("verify takes exactly one eta, got {}", etas.len())));
            };
            let inst = load_instance(instance)?;
            let k = k.or(inst.k).unwrap_or(1.0);
            let params = BoundParams::new(*eta, k, *nu)?;
            let grid = grid.grid()?;
            let report = verify_theorem(*theorem, &inst, &params, grid, &VerifyPolicy { pole_margin: *pole_margin })?;
            let code = match report.status {
                Status::Pass | Status::Vacuous => EXIT_OK,
                Status::Fail => EXIT_FAIL,
                Status::HypothesisUnmet => EXIT_HYPOTHESIS,
            };
            let config = json!({
                "subcommand": "verify",
                "theorem": theorem.tag(),
                "eta": eta,
                "k": k,
                "nu": nu,
                "instance": instance.display().to_string(),
                "pole_margin": pole_margin,
                "grid": grid,
            });
            Ok(Outcome { config, payload: Payload::Verification(report), code })
        }
        Command::Fuzz { theorem, n, k, trials, seed, eta, pole_margin, grid, .. } => {
            let etas = eta.values_or_default();
            let grid = grid.grid()?;
            let mut cfg = GeneratorConfig::new(*n, *k, *seed);
            cfg.pole_margin = *pole_margin;
            let report = fuzz_campaign(*theorem, &cfg, *trials, &etas, grid, &VerifyPolicy { pole_margin: *pole_margin })?;
            let code = if report.all_passed() { EXIT_OK } else { EXIT_FAIL };
            let config = json!({
                "subcommand": "fuzz",
                "theorem": theorem.tag(),
                "n": n,
                "k": k,
                "trials": trials,
                "seed": seed,
                "eta": etas,
                "pole_margin": pole_margin,
                "grid": grid,
            });
            Ok(Outcome { config, payload: Payload::Campaign(Box::new(report)), code })
        }
        Command::Compare { theorem, instance, eta, k, .. } => {
            let ids: Vec<TheoremId> = if theorem.is_empty() { CHAINS.iter().flatten().copied().collect() } else { theorem.clone() };
            let etas = eta.values_or_default();
            let inst = load_instance(instance)?;
            let table = compare_factors(&ids, &inst, &etas, *k)?;
            let code = if table.orderings_hold() { EXIT_OK } else { EXIT_FAIL };
            let config = json!({
                "subcommand": "compare",
                "theorems": ids.iter().map(|t| t.tag()).collect::<Vec<_>>(),
                "instance": instance.display().to_string(),
                "eta": etas,
                "k": k,
            });
            Ok(Outcome { config, payload: Payload::Comparison(table), code })
        }
        Command::Sharpness { family, theorem, n, eta, k, grid, .. } => {
            let one = Complex::new(1.0, 0.0);
            let fam = match family {
                FamilyKind::ZetaPower => ExtremalFamily::ZetaPower { zeta: one },
                FamilyKind::KPower => ExtremalFamily::KPower { k: *k },
                FamilyKind::AbPower => ExtremalFamily::AbPower { a: one, b: one },
                FamilyKind::LinearGamma => ExtremalFamily::LinearGamma { gamma: Complex::new(*k, 0.0) },
            };
            let params = BoundParams::eta_k(*eta, *k)?;
            let grid = grid.grid()?;
            let report = sharpness_check(&fam, *theorem, &params, *n, grid)?;
            let code = if report.equality { EXIT_OK } else { EXIT_FAIL };
            let config = json!({
                "subcommand": "sharpness",
                "family": family.tag(),
                "theorem": theorem.tag(),
                "n": n,
                "eta": eta,
                "k": k,
                "grid": grid,
            });
            Ok(Outcome { config, payload: Payload::Sharpness(report), code })
        }
        Command::Limit { instance, n, eta, k, beta_modulus, seed, grid, .. } => {
            let poly = match instance {
                Some(path) => load_instance(path)?.polynomial(),
                None => generate_instance_at(&GeneratorConfig::new(n.unwrap_or(3), *k, *seed), 0)?.polynomial(),
            };
            let n = n.unwrap_or_else(|| poly.degree());
            let betas = if beta_modulus.is_empty() { default_beta_sweep() } else { beta_modulus.clone() };
            let grid = grid.grid()?;
            let report = limit_sweep(n, *eta, *k, &poly, &betas, grid)?;
            let code = if report.monotone { EXIT_OK } else { EXIT_FAIL };
            let config = json!({
                "subcommand": "limit",
                "instance": instance.as_ref().map(|p| p.display().to_string()),
                "seed": seed,
                "n": n,
                "eta": eta,
                "k": k,
                "beta_modulus": betas,
                "grid": grid,
            });
            Ok(Outcome { config, payload: Payload::Limit(report), code })
        }
        Command::Lemmas { trials, seed, n, .. } => {
            let report = lemma_sweep(*trials, *seed, *n)?;
            let code = if report.ok() { EXIT_OK } else { EXIT_FAIL };
            let config = json!({ "subcommand": "lemmas", "trials": trials, "seed": seed, "n_max": n });
            Ok(Outcome { config, payload: Payload::Lemmas(report), code })
        }
    }
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::Verify { output, .. }
        | Command::Fuzz { output, .. }
        | Command::Compare { output, .. }
        | Command::Sharpness { output, .. }
        | Command::Limit { output, .. }
        | Command::Lemmas { output, .. } => output,
    }
}

/// Runs the tool with `args` (program name first), writing the report to
/// `stdout` or `--out` and diagnostics to `stderr`.
pub fn run_with<W: Write, E: Write>(args: Vec<OsString>, stdout: &mut W, stderr: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let output = output_of(&cli.command);
    let outcome = match run_command(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let env = ReportEnvelope::new(outcome.config, outcome.payload, !output.no_timestamp);
    let bytes = match serialize_report(&env, output.format.into()) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &output.out {
        Some(path) => std::fs::write(path, &bytes).map_err(|e| format!("{}: {e}", path.display())),
        None => stdout.write_all(&bytes).map_err(|e| e.to_string()),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: cannot write report: {msg}");
        return EXIT_USAGE;
    }
    outcome.code
}

pub fn run_cli(args: Vec<OsString>) -> i32 {
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

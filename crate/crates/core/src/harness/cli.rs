//! The `rlfrac` command line.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use super::gallery::{gallery_demos, gallery_grid, witness_sweep};
use super::suite::{run_suite, Suite, VerifyConfig};
use super::{Report, Series};
use crate::error::{Error, Result};
use crate::fracops::{rl_derivative, rl_integral, sobolev_rl_norm};
use crate::funcspace::{exact_lr_norm, read_csv, sample, write_csv, AnalyticFunction, AnalyticKind, Reconstruction};
use crate::normfun::{
    bmo_seminorm, combined_norm, distribution_measure, k_gamma_norm, k_gamma_profile, lp_norm, weak_lr_quasinorm,
    BmoStrategy, ClosedFormLr, DEFAULT_R_MAX, DEFAULT_TOL,
};
use crate::par::Execution;

#[derive(Parser, Debug)]
#[command(name = "rlfrac", version, about = "Riemann-Liouville fractional operators and norm functionals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply J^α / D^α or a functional to a function read from CSV.
    Compute(ComputeArgs),
    /// Run a verification suite and report every check.
    Verify(VerifyArgs),
    /// Tabulate a functional of a gallery function over a parameter range.
    Sweep(SweepArgs),
    /// Write the gallery refinement trajectories as CSV plus a JSON report.
    Gallery(GalleryArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Op {
    Integral,
    Derivative,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Functional {
    Lp,
    Weak,
    Bmo,
    Kgamma,
    Sobolev,
    Combined,
    Distribution,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Strategy {
    Auto,
    Exhaustive,
    DyadicSliding,
    Sampled,
}

#[derive(Args, Debug)]
struct ComputeArgs {
    /// CSV with header `t,v1..vd` (nodal) or `t_left,t_right,v1..vd` (cells).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    op: Option<Op>,
    /// Order of the operator; also the order of the Sobolev norm.
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, value_enum)]
    functional: Option<Functional>,
    /// Exponent for lp and sobolev.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    /// Exponent for weak.
    #[arg(long, default_value_t = 2.0)]
    r: f64,
    /// Exponent of kgamma and combined.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Level for distribution.
    #[arg(long, default_value_t = 0.0)]
    lambda: f64,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: Strategy,
    /// Interval count for the sampled strategy.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_R_MAX)]
    r_max: f64,
    /// Where to write the transformed function (CSV); stdout if absent.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_parser = ["ops", "spaces", "critical", "sobolev", "all"], default_value = "all")]
    suite: String,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long)]
    grading: Option<f64>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Fuzz functions per check.
    #[arg(long)]
    fuzz_count: Option<usize>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepFunctional {
    Lp,
    Weak,
    Bmo,
    Kgamma,
    Witness,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GalleryFn {
    Constant,
    Power,
    Loginv,
    Logplain,
    ShiftedLogPow,
    JohnsonNeugebauer,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_enum)]
    functional: SweepFunctional,
    #[arg(long = "fn", value_enum, default_value = "loginv")]
    function: GalleryFn,
    /// Parameter of the gallery function (exponent or constant value).
    #[arg(long, default_value_t = 1.0)]
    param: f64,
    /// Exponent γ of K_γ.
    #[arg(long, default_value_t = 1.0)]
    gamma: f64,
    /// Use closed-form L^r norms instead of a sampled grid (lp, kgamma).
    #[arg(long)]
    closed_form: bool,
    /// Lower exponent of the lp/weak sweeps. kgamma always scans its own
    /// 200-point grid over [1, r_max].
    #[arg(long, default_value_t = 1.0)]
    r_min: f64,
    /// Upper exponent; defaults to 16384 for kgamma and 64 otherwise.
    #[arg(long)]
    r_max: Option<f64>,
    /// Exponents in the lp/weak sweeps.
    #[arg(long, default_value_t = 50)]
    points: usize,
    /// Cells of the sampling grid.
    #[arg(long, default_value_t = 4096)]
    grid_n: usize,
    /// Smallest and largest depth k (2^k cells) for bmo and witness.
    #[arg(long, default_value_t = 8)]
    depth_min: u32,
    #[arg(long, default_value_t = 13)]
    depth_max: u32,
    /// Integrability exponent for witness.
    #[arg(long, default_value_t = 2.0)]
    p: f64,
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GalleryArgs {
    #[arg(long)]
    out: PathBuf,
}

/// Parse `args` (program name first) and run. Returns the exit code: 0 when
/// everything selected passed, 1 on check failures, 2 on usage or input errors.
pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(a),
        Command::Verify(a) => verify(a),
        Command::Sweep(a) => sweep(a),
        Command::Gallery(a) => gallery(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("rlfrac: {e}");
            2
        }
    }
}

fn strategy(s: Strategy, samples: usize, seed: u64) -> BmoStrategy {
    match s {
        Strategy::Auto => BmoStrategy::Auto,
        Strategy::Exhaustive => BmoStrategy::Exhaustive,
        Strategy::DyadicSliding => BmoStrategy::DyadicSliding,
        Strategy::Sampled => BmoStrategy::Sampled { count: samples, seed },
    }
}

fn compute(a: ComputeArgs) -> Result<i32> {
    if a.op.is_none() && a.functional.is_none() {
        return Err(Error::InvalidArgument("compute needs --op and/or --functional".into()));
    }
    let mut f = read_csv(BufReader::new(File::open(&a.input)?))?;
    if let Some(op) = a.op {
        let alpha = a.alpha.ok_or_else(|| Error::InvalidArgument("--op needs --alpha".into()))?;
        f = match op {
            Op::Integral => rl_integral(&f, alpha)?,
            Op::Derivative => rl_derivative(&f, alpha)?,
        };
        if a.functional.is_none() || a.output.is_some() {
            match &a.output {
                Some(path) => write_csv(&f, File::create(path)?)?,
                None => write_csv(&f, io::stdout().lock())?,
            }
        }
    }
    let Some(functional) = a.functional else { return Ok(0) };
    let strat = strategy(a.strategy, a.samples, a.seed);
    let out = match functional {
        Functional::Lp => json!({"functional": "lp", "params": {"p": a.p}, "value": lp_norm(&f, a.p)?}),
        Functional::Weak => serde_json::to_value(weak_lr_quasinorm(&f, a.r)?).expect("serialisable"),
        Functional::Bmo => serde_json::to_value(bmo_seminorm(&f, strat)?).expect("serialisable"),
        Functional::Kgamma => serde_json::to_value(k_gamma_norm(&f, a.gamma, a.r_max, DEFAULT_TOL)?).expect("serialisable"),
        Functional::Sobolev => {
            let alpha = a.alpha.ok_or_else(|| Error::InvalidArgument("sobolev needs --alpha".into()))?;
            json!({"functional": "sobolev", "params": {"alpha": alpha, "p": a.p}, "value": sobolev_rl_norm(&f, alpha, a.p)?})
        }
        Functional::Combined => {
            json!({"functional": "combined", "params": {"gamma": a.gamma}, "value": combined_norm(&f, a.gamma, strat)?})
        }
        Functional::Distribution => json!({
            "functional": "distribution",
            "params": {"lambda": a.lambda},
            "value": distribution_measure(&f, a.lambda),
        }),
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("serialisable"));
    Ok(0)
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let suite: Suite = a.suite.parse()?;
    let cfg = VerifyConfig {
        seed: a.seed,
        p: a.p,
        q: a.q,
        alpha: a.alpha,
        gamma: a.gamma,
        grid_n: a.grid_n,
        grading: a.grading,
        fuzz_count: a.fuzz_count,
        exec: if a.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    let rep = run_suite(suite, &cfg)?;
    print_summary(suite.name(), &rep);
    if let Some(path) = a.json {
        fs::write(path, rep.to_json())?;
    }
    Ok(if rep.all_pass() { 0 } else { 1 })
}

fn print_summary(name: &str, rep: &Report) {
    let mut out = io::stdout().lock();
    for c in rep.checks.iter().filter(|c| !c.pass) {
        let _ = writeln!(out, "FAIL {} lhs={:e} rhs={:e} {}", c.check_id, c.lhs, c.rhs, json!(c.params));
    }
    let _ = writeln!(out, "{name}: {} passed, {} failed", rep.summary.pass, rep.summary.fail);
}

fn analytic(kind: GalleryFn, param: f64) -> Result<AnalyticFunction> {
    AnalyticFunction::new(match kind {
        GalleryFn::Constant => AnalyticKind::Constant(param),
        GalleryFn::Power => AnalyticKind::Power(param),
        GalleryFn::Loginv => AnalyticKind::LogInv(param),
        GalleryFn::Logplain => AnalyticKind::LogPlain,
        GalleryFn::ShiftedLogPow => AnalyticKind::ShiftedLogPow(param),
        GalleryFn::JohnsonNeugebauer => AnalyticKind::JohnsonNeugebauer,
    })
}

fn log_spaced(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo >= 1.0 && hi >= lo && hi.is_finite()) || points < 2 {
        return Err(Error::InvalidArgument(format!("bad exponent range [{lo}, {hi}] with {points} points")));
    }
    let (a, b) = (lo.ln(), hi.ln());
    Ok((0..points)
        .map(|i| if i + 1 == points { hi } else { (a + (b - a) * i as f64 / (points - 1) as f64).exp() })
        .collect())
}

fn sweep(a: SweepArgs) -> Result<i32> {
    let af = analytic(a.function, a.param)?;
    let sampled = || sample(&af, gallery_grid(&af.kind, a.grid_n)?, Reconstruction::CellConstant);
    if a.depth_min > a.depth_max || a.depth_max > 24 {
        return Err(Error::InvalidArgument("need depth_min <= depth_max <= 24".into()));
    }
    let depths: Vec<usize> = (a.depth_min..=a.depth_max).map(|k| 1usize << k).collect();
    let series = match a.functional {
        SweepFunctional::Kgamma => {
            let r_max = a.r_max.unwrap_or(DEFAULT_R_MAX);
            let prof = if a.closed_form {
                k_gamma_profile(&ClosedFormLr::new(af.clone(), 0.0, 1.0)?, a.gamma, r_max)?
            } else {
                k_gamma_profile(&sampled()?, a.gamma, r_max)?
            };
            let mut s = Series::new("kgamma", &["r", "value"]);
            prof.into_iter().for_each(|(r, v)| s.push(vec![r, v]));
            s
        }
        SweepFunctional::Lp => {
            let mut s = Series::new("lp", &["p", "value"]);
            let f = if a.closed_form { None } else { Some(sampled()?) };
            for p in log_spaced(a.r_min, a.r_max.unwrap_or(64.0), a.points)? {
                let v = match &f {
                    Some(f) => lp_norm(f, p)?,
                    None => exact_lr_norm(&af, p, 0.0, 1.0)?.to_f64(),
                };
                s.push(vec![p, v]);
            }
            s
        }
        SweepFunctional::Weak => {
            let f = sampled()?;
            let mut s = Series::new("weak", &["r", "value"]);
            for r in log_spaced(a.r_min, a.r_max.unwrap_or(64.0), a.points)? {
                s.push(vec![r, weak_lr_quasinorm(&f, r)?.value.to_f64()]);
            }
            s
        }
        SweepFunctional::Bmo => {
            let mut s = Series::new("bmo", &["n", "value"]);
            for &n in &depths {
                let f = sample(&af, gallery_grid(&af.kind, n)?, Reconstruction::CellConstant)?;
                s.push(vec![n as f64, bmo_seminorm(&f, BmoStrategy::DyadicSliding)?.value.to_f64()]);
            }
            s
        }
        SweepFunctional::Witness => {
            let betas = [1.0 / a.p + 0.25, 1.0 / a.p + 0.5, 1.0 / a.p + 1.0];
            witness_sweep(a.p, &betas, &depths)?
        }
    };
    match a.csv {
        Some(path) => series.write_csv(File::create(path)?)?,
        None => series.write_csv(io::stdout().lock())?,
    }
    Ok(0)
}

fn gallery(a: GalleryArgs) -> Result<i32> {
    fs::create_dir_all(&a.out)?;
    let rep = gallery_demos()?;
    for s in &rep.series {
        s.write_csv(File::create(a.out.join(format!("{}.csv", s.name)))?)?;
    }
    fs::write(Path::new(&a.out).join("report.json"), rep.to_json())?;
    print_summary("gallery", &rep);
    Ok(if rep.all_pass() { 0 } else { 1 })
}

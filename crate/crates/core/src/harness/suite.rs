//! Named groups of checks behind `rlfrac verify`.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use serde_json::Value;

use super::checks::*;
use super::fuzz::{FuzzFamily, FuzzSpec};
use super::gallery::gallery_demos;
use super::{CheckResult, Report};
use crate::error::{Error, Result};
use crate::fracops::{constant_on, rl_derivative_with, rl_integral_with, semigroup_defect, sobolev_rl_parts};
use crate::funcspace::{
    exact_rl_integral_power, make_grid, sample, AnalyticFunction, AnalyticKind, Anchor, Grid, GridFunction,
    Reconstruction,
};
use crate::normfun::{
    bmo_seminorm, bmo_seminorm_with, combined_norm, k_gamma_norm, k_gamma_profile, k_gamma_scan, lp_norm,
    weak_lr_quasinorm, BmoStrategy, ClosedFormLr, Extremizer, DEFAULT_R_MAX, DEFAULT_TOL,
};
use crate::par::{map_slice, Execution};
use crate::search::ls_slope;
use crate::specfun::{digamma, eta, gamma, h_critical, rho, trigamma, upsilon};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Ops,
    Spaces,
    Critical,
    Sobolev,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ops => "ops",
            Suite::Spaces => "spaces",
            Suite::Critical => "critical",
            Suite::Sobolev => "sobolev",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ops" => Suite::Ops,
            "spaces" => Suite::Spaces,
            "critical" => Suite::Critical,
            "sobolev" => Suite::Sobolev,
            "all" => Suite::All,
            _ => return Err(Error::InvalidArgument(format!("unknown suite {s:?}"))),
        })
    }
}

/// Settings for [`run_suite`]. `None` fields fall back to the default
/// parameter lists of each check.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub alpha: Option<f64>,
    pub gamma: Option<f64>,
    /// Base resolution of the closed-form checks (default 1024).
    pub grid_n: Option<usize>,
    /// Grading exponent of graded grids (default 3).
    pub grading: Option<f64>,
    /// Fuzz functions per check (defaults 200 or 100 depending on the check).
    pub fuzz_count: Option<usize>,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            p: None,
            q: None,
            alpha: None,
            gamma: None,
            grid_n: None,
            grading: None,
            fuzz_count: None,
            exec: Execution::default(),
        }
    }
}

impl VerifyConfig {
    fn echo(&self, suite: Suite) -> BTreeMap<String, Value> {
        let mut m = BTreeMap::new();
        m.insert("suite".into(), Value::from(suite.name()));
        m.insert("seed".into(), Value::from(self.seed));
        let opt = |x: Option<f64>| x.map_or(Value::Null, num);
        m.insert("p".into(), opt(self.p));
        m.insert("q".into(), opt(self.q));
        m.insert("alpha".into(), opt(self.alpha));
        m.insert("gamma".into(), opt(self.gamma));
        m.insert("grid_n".into(), Value::from(self.base_n()));
        m.insert("grading".into(), Value::from(self.grading()));
        m.insert("fuzz_count".into(), self.fuzz_count.map_or(Value::Null, Value::from));
        m
    }

    fn base_n(&self) -> usize {
        self.grid_n.unwrap_or(1024)
    }

    fn grading(&self) -> f64 {
        self.grading.unwrap_or(3.0)
    }

    fn fuzz(&self, default_count: usize) -> FuzzSpec {
        FuzzSpec::new(self.seed, self.fuzz_count.unwrap_or(default_count), FuzzFamily::Mixed)
    }

    fn list(x: Option<f64>, default: &[f64]) -> Vec<f64> {
        x.map_or_else(|| default.to_vec(), |v| vec![v])
    }
}

/// Run one suite (or all of them, in the order ops, spaces, critical,
/// sobolev) and collect its checks and coverage manifest.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    let mut rep = Report::new(cfg.echo(suite));
    let parts: &[Suite] = match suite {
        Suite::All => &[Suite::Ops, Suite::Spaces, Suite::Critical, Suite::Sobolev],
        _ => std::slice::from_ref(&suite),
    };
    for &s in parts {
        let first = rep.checks.len();
        match s {
            Suite::Ops => ops(cfg, &mut rep)?,
            Suite::Spaces => spaces(cfg, &mut rep)?,
            Suite::Critical => critical(cfg, &mut rep)?,
            Suite::Sobolev => sobolev(cfg, &mut rep)?,
            Suite::All => unreachable!(),
        }
        // (suite, check_id, case) order; the sort is stable, so parameter
        // sweeps keep their generation order within a case.
        let block = &mut rep.checks[first..];
        block.sort_by_cached_key(|c| (c.check_id.clone(), c.params.get("case").and_then(Value::as_u64)));
        for c in block {
            c.params.insert("suite".into(), Value::from(s.name()));
        }
    }
    Ok(rep)
}

/// Relative error `max_i |J^α t^γ − exact| / max_i |exact|` over nodes after the first.
pub fn closed_form_integral_error(gamma_t: f64, alpha: f64, grid: Grid, exec: Execution) -> Result<f64> {
    let mode = if gamma_t < 0.0 { Reconstruction::CellConstant } else { Reconstruction::NodalLinear };
    let f = sample(&AnalyticFunction::new(AnalyticKind::Power(gamma_t))?, grid, mode)?;
    let g = rl_integral_with(&f, alpha, exec)?;
    let (coef, expo) = exact_rl_integral_power(gamma_t, alpha)?;
    let mut err: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for (i, &t) in g.grid().nodes().iter().enumerate().skip(1) {
        let exact = coef * t.powf(expo);
        err = err.max((g.values()[i] - exact).abs());
        scale = scale.max(exact.abs());
    }
    Ok(err / scale)
}

/// Observed order `−d log(defect)/d log(n)` of the semigroup defect.
pub fn semigroup_order(f: impl Fn(usize) -> Result<GridFunction>, ns: &[usize], alpha: f64, beta: f64) -> Result<(f64, Vec<f64>)> {
    let mut defects = Vec::with_capacity(ns.len());
    for &n in ns {
        defects.push(semigroup_defect(&f(n)?, alpha, beta)?);
    }
    let x: Vec<f64> = ns.iter().map(|&n| (n as f64).ln()).collect();
    let y: Vec<f64> = defects.iter().map(|d| d.ln()).collect();
    Ok((-ls_slope(&x, &y), defects))
}

fn ops(cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    rep.cover(&[
        "rl_integral",
        "rl_derivative",
        "semigroup_defect",
        "exact_rl_integral_power",
        "make_grid",
        "sample",
        "lp_norm",
        "log_gamma",
        "check_operator_bound",
    ]);
    let n = cfg.base_n();
    let grading = cfg.grading();
    let alphas = VerifyConfig::list(cfg.alpha, &[0.3, 0.5, 1.0, 1.7]);

    // Closed-form fractional integrals of powers.
    for &g in &[0.0, 1.0, 2.5, -0.4] {
        for &a in &alphas {
            let start = Instant::now();
            let (grid, tol, label) = if g < 0.0 {
                (make_grid(0.0, 1.0, 2 * n, grading, Anchor::Left)?, 1e-3, "graded")
            } else {
                (Grid::uniform(0.0, 1.0, n)?, 1e-6, "uniform")
            };
            let cells = grid.cells();
            let err = closed_form_integral_error(g, a, grid, cfg.exec)?;
            rep.extend([CheckResult::new("closed-form-integral", err, tol, 0.0)
                .with("gamma", g)
                .with("alpha", a)
                .with("grid", label)
                .with("n", cells)
                .timed(start)]);
        }
    }

    // Semigroup defect and its refinement order.
    let start = Instant::now();
    let one = Grid::uniform(0.0, 1.0, n)?.into();
    let d = semigroup_defect(&constant_on(&one, 1.0), 0.5, 0.5)?;
    rep.extend([CheckResult::new("semigroup-defect", d, 1e-4, 0.0).with("n", n).timed(start)]);
    let ns = [256, 512, 1024, 2048];
    let start = Instant::now();
    let (order, _) = semigroup_order(
        |n| Ok(constant_on(&make_grid(0.0, 1.0, n, 2.0, Anchor::Left)?.into(), 1.0)),
        &ns,
        0.5,
        0.5,
    )?;
    rep.extend([CheckResult::new("semigroup-order", 1.8, order, 0.0).with("fn", "one").with("grading", 2.0).timed(start)]);
    let start = Instant::now();
    let (order, _) = semigroup_order(
        |n| {
            let grid = Grid::uniform(0.0, 1.0, n)?;
            let v = grid.nodes().iter().map(|t| t * t * (3.0 * t).cos()).collect();
            GridFunction::scalar_nodal(grid, v)
        },
        &ns,
        0.5,
        0.5,
    )?;
    rep.extend([CheckResult::new("semigroup-order", 1.8, order, 0.0).with("fn", "t^2 cos 3t").with("grading", 1.0).timed(start)]);

    // α → 0 and inversion on smooth fuzzed curves at 2048 cells.
    let smooth = FuzzSpec::new(cfg.seed, 8, FuzzFamily::NodalLinearRandom).with_refine(128).cases()?;
    let per: Vec<Result<Vec<CheckResult>>> = map_slice(cfg.exec, &smooth, |c| {
        let start = Instant::now();
        let norm = lp_norm(&c.f, 1.0)?;
        let mut errs = Vec::with_capacity(10);
        for k in 1..=10 {
            let a = 0.5f64.powi(k);
            let g = rl_integral_with(&c.f, a, Execution::Sequential)?;
            errs.push(lp_norm(&GridFunction::linear_combination(1.0, &g, -1.0, &c.f)?, 1.0)?);
        }
        let rises = errs.windows(2).filter(|w| w[1] >= w[0]).count();
        let mut out = vec![
            CheckResult::new("alpha-zero-monotone", rises as f64, 0.0, 0.0).with("case", c.index).timed(start),
            CheckResult::new("alpha-zero-limit", errs[9], 1e-2 * norm, 0.0).with("case", c.index).timed(start),
        ];
        for &a in &[0.25, 0.5, 1.0, 1.7] {
            let start = Instant::now();
            let back = rl_derivative_with(&rl_integral_with(&c.f, a, Execution::Sequential)?, a, Execution::Sequential)?;
            let e = lp_norm(&GridFunction::linear_combination(1.0, &back, -1.0, &c.f)?, 1.0)?;
            out.push(CheckResult::new("inversion", e, 1e-2 * norm, 0.0).with("case", c.index).with("alpha", a).timed(start));
        }
        Ok(out)
    });
    for r in per {
        rep.extend(r?);
    }

    // Operator bound over fuzzed inputs.
    let spec = cfg.fuzz(200);
    let ps = VerifyConfig::list(cfg.p, &[1.0, 2.0, f64::INFINITY]);
    for &a in &VerifyConfig::list(cfg.alpha, &[0.25, 0.5, 1.0, 1.7]) {
        for &p in &ps {
            rep.extend(check_operator_bound(&spec, a, p, cfg.exec)?);
        }
    }
    Ok(())
}

fn spaces(cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    rep.cover(&[
        "digamma",
        "trigamma",
        "rho",
        "upsilon",
        "eta",
        "bmo_seminorm",
        "k_gamma_norm",
        "weak_lr_quasinorm",
        "combined_norm",
        "exact_lr_norm",
        "check_iterbmo",
    ]);
    let n4 = 4 * cfg.base_n();
    let grading = cfg.grading();
    let two_over_e = 2.0 / std::f64::consts::E;

    // BMO of log t and of constants.
    let start = Instant::now();
    let log_plain = sample(
        &AnalyticFunction::new(AnalyticKind::LogPlain)?,
        make_grid(0.0, 1.0, n4, grading, Anchor::Left)?,
        Reconstruction::CellConstant,
    )?;
    let b = bmo_seminorm_with(&log_plain, BmoStrategy::DyadicSliding, cfg.exec)?.value.to_f64();
    rep.extend([CheckResult::new("bmo-log", (b - two_over_e).abs() / two_over_e, 0.01, 0.0)
        .with("n", n4)
        .with("value", b)
        .timed(start)]);
    for (strategy, cells) in [(BmoStrategy::Exhaustive, 256), (BmoStrategy::DyadicSliding, 4096)] {
        let start = Instant::now();
        let c = GridFunction::scalar_cells(Grid::uniform(0.0, 1.0, cells)?, vec![-1.75; cells])?;
        let v = bmo_seminorm(&c, strategy)?.value.to_f64();
        rep.extend([CheckResult::new("bmo-constant", v, 0.0, 0.0).with("strategy", strategy.name()).timed(start)]);
    }

    // K_γ of (log 1/t)^γ.
    for &g in &VerifyConfig::list(cfg.gamma, &[0.5, 1.0, 2.0]) {
        let start = Instant::now();
        let f = sample(
            &AnalyticFunction::new(AnalyticKind::LogInv(g))?,
            make_grid(0.0, 1.0, n4, grading, Anchor::Left)?,
            Reconstruction::CellConstant,
        )?;
        let k = k_gamma_norm(&f, g, DEFAULT_R_MAX, DEFAULT_TOL)?;
        let exact = gamma(g + 1.0)?;
        let r_at = match k.extremizer {
            Some(Extremizer::Exponent { r, .. }) => r,
            _ => f64::NAN,
        };
        rep.extend([
            CheckResult::new("k-closed-form", (k.value.to_f64() - exact).abs() / exact, 0.01, 0.0)
                .with("gamma", g)
                .with("value", k.value.to_f64())
                .timed(start),
            CheckResult::new("k-argmax", r_at, 1.05, 0.0).with("gamma", g).timed(start),
        ]);

        let start = Instant::now();
        let sigma = g / 2.0;
        let src = ClosedFormLr::new(AnalyticFunction::new(AnalyticKind::LogInv(g))?, 0.0, 1.0)?;
        let scan = k_gamma_scan(&src, sigma, DEFAULT_R_MAX, DEFAULT_TOL, cfg.exec)?;
        let (x, y): (Vec<f64>, Vec<f64>) = k_gamma_profile(&src, sigma, DEFAULT_R_MAX)?
            .into_iter()
            .filter(|(r, _)| (64.0..=4096.0).contains(r))
            .map(|(r, v)| (r.ln(), v.ln()))
            .unzip();
        let slope = ls_slope(&x, &y);
        rep.extend([
            CheckResult::new("k-growth-tail", f64::from(u8::from(!scan.tail_flag())), 0.0, 0.0)
                .with("gamma", g)
                .with("sigma", sigma)
                .timed(start),
            CheckResult::new("k-growth-slope", (slope - (g - sigma)).abs(), 0.1 * (g - sigma), 0.0)
                .with("gamma", g)
                .with("sigma", sigma)
                .with("slope", slope)
                .timed(start),
        ]);
    }

    // Scalar inequalities behind the K_γ closed form.
    let start = Instant::now();
    let s_grid: Vec<f64> = (1..=9900).map(|i| 1.0 + 0.01 * i as f64).collect();
    for zeta in [1.0, 2.0, 5.0] {
        let mut min = f64::INFINITY;
        for &s in &s_grid {
            min = min.min(rho(zeta, s)?);
        }
        rep.extend([CheckResult::new("rho-positive", 0.0, min, 0.0).with("zeta", zeta).timed(start)]);
    }
    let mut worst = f64::NEG_INFINITY;
    for &s in &s_grid {
        worst = worst.max(trigamma(s)? - ((1.0 / s).exp() - 1.0));
    }
    rep.extend([CheckResult::new("trigamma-bound", worst, 0.0, 0.0).timed(start)]);
    let start = Instant::now();
    let mut rises = 0;
    for g in [0.5, 1.0, 2.0] {
        let mut prev = f64::INFINITY;
        for i in 0..=1000 {
            let s = 1000f64.powf(i as f64 / 1000.0);
            let v = upsilon(g, g, s)?;
            if v > prev {
                rises += 1;
            }
            prev = v;
        }
    }
    rep.extend([CheckResult::new("upsilon-monotone", rises as f64, 0.0, 0.0).timed(start)]);
    let start = Instant::now();
    let d1 = digamma(1.0)?;
    rep.extend([CheckResult::new("digamma-euler", (d1 + 0.577_215_664_901_532_9).abs(), 1e-12, 0.0).timed(start)]);

    // η: monotone, bounded by 2/e, with limit 2/e.
    let start = Instant::now();
    let mut drops = 0;
    let mut max: f64 = 0.0;
    let mut prev = f64::NEG_INFINITY;
    for i in 1..=1000 {
        let e = 1e5f64.powf(i as f64 / 1000.0);
        let v = eta(e)?;
        if v < prev {
            drops += 1;
        }
        prev = v;
        max = max.max(v);
    }
    rep.extend([
        CheckResult::new("eta-monotone", drops as f64, 0.0, 0.0).timed(start),
        CheckResult::new("eta-bounded", max - two_over_e, 1e-9, 0.0).timed(start),
        CheckResult::new("eta-limit", (eta(1e5)? - two_over_e).abs(), 1e-3, 0.0).timed(start),
    ]);

    // Interpolation between L^1 and BMO.
    for kind in [AnalyticKind::LogInv(1.0), AnalyticKind::LogPlain] {
        let f = AnalyticFunction::new(kind)?;
        rep.extend([check_iterbmo(&f, &[1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0])?]);
    }

    // Properties over fuzzed inputs.
    let spec = cfg.fuzz(50);
    let cases = spec.cases()?;
    let per: Vec<Result<Vec<CheckResult>>> = map_slice(cfg.exec, &cases, |c| {
        let start = Instant::now();
        let f = &c.f;
        let unit = on_unit_interval(f)?;
        let tag = |r: CheckResult| r.with("case", c.index).with("fn", c.label.as_str()).timed(start);
        let mut out = Vec::new();
        for r in [1.0, 2.0, 4.0] {
            let w = weak_lr_quasinorm(f, r)?.value.to_f64();
            out.push(tag(CheckResult::new("weak-le-strong", w, lp_norm(f, r)?, STRICT_SLACK).with("r", r)));
        }
        for (r1, r2) in [(1.0, 2.0), (2.0, 4.0), (4.0, f64::INFINITY)] {
            out.push(tag(CheckResult::new("holder", lp_norm(&unit, r1)?, lp_norm(&unit, r2)?, STRICT_SLACK)
                .with("r1", r1)
                .with("r2", num(r2))));
        }
        let k_half = k_gamma_norm(&unit, 0.5, DEFAULT_R_MAX, DEFAULT_TOL)?.value.to_f64();
        let k_one = k_gamma_norm(&unit, 1.0, DEFAULT_R_MAX, DEFAULT_TOL)?.value.to_f64();
        let sup = lp_norm(f, f64::INFINITY)?;
        out.push(tag(CheckResult::new("k-monotone", k_one, k_half, STRICT_SLACK)));
        out.push(tag(CheckResult::new("linf-domination", k_half, sup, STRICT_SLACK)));
        let b = bmo_seminorm_with(f, BmoStrategy::Auto, Execution::Sequential)?.value.to_f64();
        out.push(tag(CheckResult::new("bmo-le-2sup", b, 2.0 * sup, STRICT_SLACK)));
        let comb = combined_norm(&unit, 0.5, BmoStrategy::Auto)?;
        out.push(tag(CheckResult::new("combined-ge-parts", b.max(k_half), comb, STRICT_SLACK)));
        Ok(out)
    });
    for r in per {
        rep.extend(r?);
    }

    let demos = gallery_demos()?;
    rep.extend(demos.checks);
    rep.coverage.extend(demos.coverage);
    Ok(())
}

/// The same samples on the affinely rescaled grid over [0, 1].
fn on_unit_interval(f: &GridFunction) -> Result<GridFunction> {
    let g = f.grid();
    let (t0, len) = (g.t0(), g.length());
    let last = g.node_count() - 1;
    let nodes = g.nodes().iter().enumerate().map(|(i, t)| if i == last { 1.0 } else { (t - t0) / len }).collect();
    Ok(GridFunction::new(Grid::from_nodes(nodes)?, f.dim(), f.mode(), f.values().to_vec(), f.vector_norm())?)
}

fn critical(cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    rep.cover(&[
        "hl_constant",
        "h_critical",
        "weak_lr_quasinorm",
        "bmo_seminorm",
        "k_gamma_norm",
        "combined_norm",
        "check_hl_critical",
        "check_bmo_critical",
        "check_k_critical",
        "check_combined",
    ]);
    let ps = VerifyConfig::list(cfg.p, &[1.5, 2.0, 4.0]);
    let qs = VerifyConfig::list(cfg.q, &[1.0, 2.0, 8.0]);
    let spec = cfg.fuzz(200);
    for &p in &ps {
        for &q in &qs {
            rep.extend(check_hl_critical(&spec, p, q, cfg.exec)?);
        }
        rep.extend(check_bmo_critical(&spec, p, cfg.exec)?);
    }

    let k_spec = cfg.fuzz(100);
    for &p in &VerifyConfig::list(cfg.p, &[2.0]) {
        let g = cfg.gamma.unwrap_or((p - 1.0) / p).max((p - 1.0) / p);
        let k = check_k_critical(&k_spec, p, g, cfg.exec)?;
        rep.extend(k.checks);
        rep.extend(check_combined(&k_spec, p, g, k.m_emp, cfg.exec)?);

        let start = Instant::now();
        let near_one = h_critical(p, 1.0 + 1e-6)?;
        let mut h_max: f64 = 0.0;
        for i in 1..=2000 {
            h_max = h_max.max(h_critical(p, 1.0 + 1e-6 * 1e12f64.powf(i as f64 / 2000.0))?);
        }
        rep.extend([
            CheckResult::new("h-near-one", (near_one - 1.0).abs(), 1e-3, 0.0).with("p", p).timed(start),
            CheckResult::new("h-bounded", h_max, 1.0, STRICT_SLACK).with("p", p).timed(start),
        ]);
    }
    Ok(())
}

fn sobolev(cfg: &VerifyConfig, rep: &mut Report) -> Result<()> {
    rep.cover(&["sobolev_rl_norm", "rl_derivative", "check_sobolev", "check_sharpness"]);
    let spec = cfg.fuzz(100);
    for &a in &VerifyConfig::list(cfg.alpha.filter(|a| *a >= 1.0), &[1.0, 1.5, 2.3]) {
        rep.extend(check_sobolev(&spec, a, cfg.exec)?);
    }

    let start = Instant::now();
    let grid = Grid::uniform(0.0, 1.0, 64)?.into();
    let g = rl_integral_with(&constant_on(&grid, 1.0), 1.0, cfg.exec)?;
    let lhs: f64 = sobolev_rl_parts(&g, 1.0, 1.0)?.iter().sum();
    let rhs = sobolev_constant(1.0, 1.0)?;
    rep.extend([
        CheckResult::new("sobolev-exact", (lhs - 1.5).abs() + (rhs - 2.0).abs(), 1e-9, 0.0)
            .with("lhs", lhs)
            .with("rhs", rhs)
            .timed(start),
        CheckResult::new("sobolev", lhs, rhs, SOBOLEV_SLACK).with("fn", "one").with("alpha", 1.0).timed(start),
    ]);

    rep.extend([
        check_sharpness(1.0, 1.0, 2.0, None)?,
        check_sharpness(1.0, 1.9, 1.0, Some(-0.2))?,
        check_sharpness(1.0, 1.0, 2.0, Some(0.0))?,
    ]);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Ops, Suite::Spaces, Suite::Critical, Suite::Sobolev, Suite::All] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn unit_rescale_keeps_values() {
        let f = GridFunction::scalar_cells(Grid::uniform(-0.3, 1.9, 4).unwrap(), vec![1.0, 2.0, 3.0, 4.0]).unwrap();
        let u = on_unit_interval(&f).unwrap();
        assert_eq!(u.grid().t0(), 0.0);
        assert_eq!(u.grid().t1(), 1.0);
        assert_eq!(u.values(), f.values());
    }

    #[test]
    fn small_critical_suite_is_green() {
        let cfg = VerifyConfig { p: Some(2.0), q: Some(2.0), fuzz_count: Some(6), ..Default::default() };
        let rep = run_suite(Suite::Critical, &cfg).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks.iter().filter(|c| !c.pass).collect::<Vec<_>>());
        assert!(rep.coverage.contains("check_k_critical"));
    }
}

//! Refinement trajectories for the closed-form witness functions.

use std::collections::BTreeMap;
use std::time::Instant;

use super::checks::num;
use super::{CheckResult, Report, Series};
use crate::error::Result;
use crate::fracops::rl_integral;
use crate::funcspace::{
    exact_lr_norm, make_grid, sample, AnalyticFunction, AnalyticKind, Anchor, Grid, GridFunction, Reconstruction,
};
use crate::normfun::{
    avg, bmo_seminorm, distribution_measure, k_gamma_norm, k_gamma_profile, k_gamma_scan, lp_norm, mean_oscillation,
    weak_lr_quasinorm, BmoStrategy, ClosedFormLr, DEFAULT_R_MAX, DEFAULT_TOL,
};
use crate::par::Execution;
use crate::search::ls_slope;
use crate::specfun::{eta, gamma};

/// Default grid with `n` cells on (0, 1) for a gallery member: uniform for
/// constants, graded (exponent 3) toward each pole otherwise.
pub fn gallery_grid(kind: &AnalyticKind, n: usize) -> Result<Grid> {
    match kind {
        AnalyticKind::Constant(_) => Grid::uniform(0.0, 1.0, n),
        AnalyticKind::Power(g) if *g >= 0.0 => Grid::uniform(0.0, 1.0, n),
        AnalyticKind::ShiftedLogPow(_) => Grid::graded_at(0.0, 1.0, 0.5, n / 4, n - n / 4, 3.0),
        AnalyticKind::JohnsonNeugebauer => Grid::graded_at(0.0, 1.0, (-2f64).exp(), n / 4, n - n / 4, 3.0),
        _ => make_grid(0.0, 1.0, n, 3.0, Anchor::Left),
    }
}

fn gallery_fn(kind: AnalyticKind, n: usize) -> Result<GridFunction> {
    let f = AnalyticFunction::new(kind)?;
    sample(&f, gallery_grid(&kind, n)?, Reconstruction::CellConstant)
}

fn count_non_increasing(v: &[f64]) -> usize {
    v.windows(2).filter(|w| w[1] <= w[0]).count()
}

/// Demonstrations on the gallery: unbounded BMO with finite K_γ for the
/// shifted log power, the pole-driven L^p blow-up of the Johnson-Neugebauer
/// function, the 2/e oscillation of `log t`, constants, K_γ profiles and
/// the exponential level-set tail of `log t`.
pub fn gallery_demos() -> Result<Report> {
    let mut rep = Report::new(BTreeMap::new());
    rep.cover(&[
        "gallery_demos",
        "sample",
        "make_grid",
        "bmo_seminorm",
        "k_gamma_norm",
        "exact_lr_norm",
        "lp_norm",
        "mean_oscillation",
        "avg",
        "eta",
        "distribution_measure",
        "weak_lr_quasinorm",
        "combined_norm",
    ]);
    let depths: Vec<usize> = (8..=13).map(|k| 1usize << k).collect();

    // Shifted log power: BMO lower bounds grow under refinement, K_γ stays finite.
    let start = Instant::now();
    let mut s = Series::new("shifted-log-bmo", &["n", "bmo"]);
    for &n in &depths {
        let f = sample(
            &AnalyticFunction::new(AnalyticKind::ShiftedLogPow(1.0))?,
            Grid::uniform(0.0, 1.0, n)?,
            Reconstruction::CellConstant,
        )?;
        s.push(vec![n as f64, bmo_seminorm(&f, BmoStrategy::DyadicSliding)?.value.to_f64()]);
    }
    let b = s.column("bmo").expect("column");
    let ln_n: Vec<f64> = depths.iter().map(|&n| (n as f64).ln()).collect();
    let slope = ls_slope(&ln_n, &b);
    rep.extend([
        CheckResult::new("gallery-shifted-bmo-increasing", count_non_increasing(&b) as f64, 0.0, 0.0)
            .with("depths", depths.len())
            .timed(start),
        CheckResult::new("gallery-shifted-bmo-slope", 0.0, slope, 0.0).timed(start),
    ]);
    rep.series.push(s);

    let start = Instant::now();
    let shifted = ClosedFormLr::new(AnalyticFunction::new(AnalyticKind::ShiftedLogPow(1.0))?, 0.0, 1.0)?;
    let k = k_gamma_scan(&shifted, 1.0, DEFAULT_R_MAX, DEFAULT_TOL, Execution::default())?;
    let diverged = k.tail_flag() || !k.value.is_finite();
    rep.extend([CheckResult::new("gallery-shifted-k-finite", f64::from(u8::from(diverged)), 0.0, 0.0)
        .with("k_value", num(k.value.to_f64()))
        .timed(start)]);
    let mut s = Series::new("shifted-log-k-profile", &["r", "value"]);
    for (r, v) in k_gamma_profile(&shifted, 1.0, DEFAULT_R_MAX)? {
        s.push(vec![r, v]);
    }
    rep.series.push(s);

    // Johnson-Neugebauer: L^p norms on (e^{-2} + ε, 1) blow up like ε^{1/p − 1}.
    let start = Instant::now();
    let pole = (-2f64).exp();
    let jn = AnalyticFunction::new(AnalyticKind::JohnsonNeugebauer)?;
    let mut s = Series::new("jn-lp-cutoff", &["eps", "p", "value"]);
    let mut fit = (Vec::new(), Vec::new());
    for j in 4..=16 {
        let eps = 0.5f64.powi(j);
        let f = sample(&jn, make_grid(pole + eps, 1.0, 2048, 3.0, Anchor::Left)?, Reconstruction::CellConstant)?;
        for p in [1.0, 2.0, 4.0] {
            let v = lp_norm(&f, p)?;
            s.push(vec![eps, p, v]);
            if p == 2.0 && j >= 8 {
                fit.0.push(eps.ln());
                fit.1.push(v.ln());
            }
        }
    }
    let jn_slope = ls_slope(&fit.0, &fit.1);
    rep.extend([CheckResult::new("gallery-jn-cutoff-slope", (jn_slope + 0.5).abs(), 0.05, 0.0)
        .with("p", 2.0)
        .with("slope", jn_slope)
        .timed(start)]);
    rep.series.push(s);
    let mut s = Series::new("jn-bmo", &["n", "bmo"]);
    for &n in &depths[..5] {
        s.push(vec![n as f64, bmo_seminorm(&gallery_fn(AnalyticKind::JohnsonNeugebauer, n)?, BmoStrategy::DyadicSliding)?.value.to_f64()]);
    }
    rep.series.push(s);

    // log t: BMO tends to 2/e, K_1 equals Γ(2), every L^r norm is finite.
    let start = Instant::now();
    let mut s = Series::new("logplain-bmo", &["n", "bmo"]);
    for &n in &depths[..5] {
        s.push(vec![n as f64, bmo_seminorm(&gallery_fn(AnalyticKind::LogPlain, n)?, BmoStrategy::DyadicSliding)?.value.to_f64()]);
    }
    let b12 = s.rows.last().expect("rows")[1];
    rep.extend([CheckResult::new("gallery-logplain-bmo", (b12 - 0.7355).abs(), 0.0075, 0.0)
        .with("n", 4096)
        .with("bmo", b12)
        .timed(start)]);
    rep.series.push(s);

    let start = Instant::now();
    let log_plain = gallery_fn(AnalyticKind::LogPlain, 4096)?;
    let k1 = k_gamma_norm(&log_plain, 1.0, DEFAULT_R_MAX, DEFAULT_TOL)?.value.to_f64();
    rep.extend([CheckResult::new("gallery-logplain-k1", (k1 - gamma(2.0)?).abs(), 0.01, 0.0)
        .with("k_value", k1)
        .timed(start)]);
    let start = Instant::now();
    let lp = AnalyticFunction::new(AnalyticKind::LogPlain)?;
    let infinite = (0..=10).filter(|k| !exact_lr_norm(&lp, (1 << k) as f64, 0.0, 1.0).map_or(false, |v| v.is_finite())).count();
    rep.extend([CheckResult::new("gallery-logplain-lr-finite", infinite as f64, 0.0, 0.0).timed(start)]);

    // Mean oscillation of log t over [a, aε] is η(ε) whatever a is.
    for (a, e) in [(1.0f64 / 16.0, 8.0f64), (1.0 / 4096.0, 100.0)] {
        let start = Instant::now();
        let n = 4096;
        let nodes: Vec<f64> = (0..=n).map(|i| if i == n { a * e } else { a * e.powf(i as f64 / n as f64) }).collect();
        let grid = Grid::from_nodes(nodes)?;
        let f = sample(&lp, grid, Reconstruction::NodalLinear)?;
        let mo = mean_oscillation(&f, a, a * e)?;
        let want = eta(e)?;
        let mean = avg(&f, a, a * e)?[0];
        let exact_mean = (a * e * (a * e).ln() - a * a.ln()) / (a * e - a) - 1.0;
        rep.extend([
            CheckResult::new("gallery-log-oscillation", (mo - want).abs(), 1e-5 * want, 0.0)
                .with("a", a)
                .with("eps", e)
                .with("value", mo)
                .timed(start),
            CheckResult::new("gallery-log-average", (mean - exact_mean).abs(), 1e-6 * exact_mean.abs(), 0.0)
                .with("a", a)
                .with("eps", e)
                .timed(start),
        ]);
    }

    // Constants: every functional is 0 or c.
    let start = Instant::now();
    let c = 2.5;
    let cf = gallery_fn(AnalyticKind::Constant(c), 256)?;
    let mut worst: f64 = 0.0;
    for p in [1.0, 2.0, 7.0, f64::INFINITY] {
        worst = worst.max((lp_norm(&cf, p)? - c).abs());
    }
    worst = worst.max((weak_lr_quasinorm(&cf, 3.0)?.value.to_f64() - c).abs());
    worst = worst.max((k_gamma_norm(&cf, 0.5, DEFAULT_R_MAX, DEFAULT_TOL)?.value.to_f64() - c).abs());
    worst = worst.max((crate::normfun::combined_norm(&cf, 0.5, BmoStrategy::Exhaustive)? - c).abs());
    rep.extend([
        CheckResult::new("gallery-constant-values", worst, 1e-12 * c, 0.0).timed(start),
        CheckResult::new("gallery-constant-bmo", bmo_seminorm(&cf, BmoStrategy::Exhaustive)?.value.to_f64(), 0.0, 0.0)
            .timed(start),
    ]);

    // K_γ profiles of (log 1/t)^γ at σ = γ/2 from the closed form.
    for g in [0.5, 1.0, 2.0] {
        let src = ClosedFormLr::new(AnalyticFunction::new(AnalyticKind::LogInv(g))?, 0.0, 1.0)?;
        let mut s = Series::new(&format!("loginv-k-profile-gamma{g}"), &["r", "value"]);
        for (r, v) in k_gamma_profile(&src, g / 2.0, DEFAULT_R_MAX)? {
            s.push(vec![r, v]);
        }
        rep.series.push(s);
    }

    // Level sets of log t − avg decay exponentially.
    let start = Instant::now();
    let mean = avg(&log_plain, 0.0, 1.0)?[0];
    let grid = log_plain.grid_arc().clone();
    let shifted_log =
        GridFunction::linear_combination(1.0, &log_plain, -mean, &GridFunction::scalar_cells(grid.clone(), vec![1.0; grid.cells()])?)?;
    let mut s = Series::new("log-level-tail", &["lambda", "measure"]);
    let mut fit = (Vec::new(), Vec::new());
    for i in 0..=20 {
        let lam = 0.5 * i as f64;
        let m = distribution_measure(&shifted_log, lam);
        s.push(vec![lam, m]);
        if (2.0..=8.0).contains(&lam) && m > 0.0 {
            fit.0.push(lam);
            fit.1.push(m.ln());
        }
    }
    let tail = ls_slope(&fit.0, &fit.1);
    rep.extend([CheckResult::new("gallery-log-tail-decay", tail, 0.0, 0.0).with("rate", tail).timed(start)]);
    rep.series.push(s);

    Ok(rep)
}

/// Growth of `‖J^{1/p} f_β‖_∞` under refinement for the candidates
/// `f_β(t) = t^{−1/p} (1 + log(1/t))^{−β}` on (0, 1), which lie in L^p
/// exactly when `βp > 1`. Columns: beta, n, sup of the image, ‖f_β‖_p.
pub fn witness_sweep(p: f64, betas: &[f64], depths: &[usize]) -> Result<Series> {
    let mut s = Series::new("witness-sweep", &["beta", "n", "sup", "f_lp"]);
    for &beta in betas {
        for &n in depths {
            let grid = make_grid(0.0, 1.0, n, 3.0, Anchor::Left)?;
            let values = (0..grid.cells())
                .map(|j| {
                    let t = grid.midpoint(j);
                    t.powf(-1.0 / p) * (1.0 - t.ln()).powf(-beta)
                })
                .collect();
            let f = GridFunction::scalar_cells(grid, values)?;
            let g = rl_integral(&f, 1.0 / p)?;
            s.push(vec![beta, n as f64, lp_norm(&g, f64::INFINITY)?, lp_norm(&f, p)?]);
        }
    }
    Ok(s)
}

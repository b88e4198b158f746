//! Inequality checks. Each returns one [`CheckResult`] per input function
//! (or per configuration), in case order.

use std::time::Instant;

use serde_json::Value;

use super::fuzz::{FuzzCase, FuzzSpec};
use super::gallery::gallery_grid;
use super::CheckResult;
use crate::error::{Error, Result};
use crate::fracops::{rl_derivative_with, rl_integral_with, sobolev_rl_norm, FracOrder};
use crate::funcspace::{exact_lr_norm, sample, AnalyticFunction, AnalyticKind, Grid, GridFunction, Reconstruction};
use crate::normfun::{
    bmo_seminorm_with, combined_norm, k_gamma_norm, k_gamma_profile, lp_norm, lp_norm_on, weak_lr_quasinorm,
    BmoStrategy, DEFAULT_R_MAX, DEFAULT_TOL,
};
use crate::par::{map_slice, Execution};
use crate::search::ls_slope;
use crate::specfun::{gamma, h_critical, hl_constant, weak_hl_constant, ExtendedReal};

/// Rounding-only slack for inequalities that hold exactly for the discrete data.
pub const STRICT_SLACK: f64 = 1e-10;
/// Slack for checks whose left side is a BMO lower bound.
pub const BMO_SLACK: f64 = 1e-6;
/// Slack for checks limited by discrete differentiation.
pub const SOBOLEV_SLACK: f64 = 1e-4;

/// JSON number, or a string for non-finite values (JSON has no infinity).
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(format!("{x}"))
    }
}

fn per_case(id: &str, c: &FuzzCase, lhs: f64, rhs: f64, slack: f64) -> CheckResult {
    CheckResult::new(id, lhs, rhs, slack).with("case", c.index).with("fn", c.label.as_str())
}

// Cases run in parallel; each case runs its operators sequentially so the
// per-case arithmetic is fixed.
fn over_cases<T, F>(spec: &FuzzSpec, exec: Execution, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&FuzzCase) -> Result<T> + Sync + Send,
{
    let cases = spec.cases()?;
    map_slice(exec, &cases, f).into_iter().collect()
}

fn critical_image(f: &GridFunction, p: f64) -> Result<GridFunction> {
    rl_integral_with(f, 1.0 / p, Execution::Sequential)
}

fn check_p(op: &'static str, p: f64) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::InvalidArgument(format!("{op}: p = {p} must be finite and > 1")));
    }
    Ok(())
}

/// `‖J^α f‖_p ≤ (L^α / Γ(α+1)) ‖f‖_p`.
pub fn check_operator_bound(spec: &FuzzSpec, alpha: f64, p: f64, exec: Execution) -> Result<Vec<CheckResult>> {
    if !(alpha > 0.0) || !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!("operator bound needs alpha > 0, p >= 1 (got {alpha}, {p})")));
    }
    let factor = 1.0 / gamma(alpha + 1.0)?;
    over_cases(spec, exec, |c| {
        let start = Instant::now();
        let g = rl_integral_with(&c.f, alpha, Execution::Sequential)?;
        let rhs = c.f.grid().length().powf(alpha) * factor * lp_norm(&c.f, p)?;
        Ok(per_case("operator-bound", c, lp_norm(&g, p)?, rhs, STRICT_SLACK)
            .with("alpha", alpha)
            .with("p", num(p))
            .timed(start))
    })
}

/// Three checks per function for `g = J^{1/p} f`:
/// (a) `‖g‖_q ≤ C(p,q) L^{1/q} ‖f‖_p`;
/// (b) `‖g‖_q ≤ p^{1/q} L^{1/(pq)} [g]_{w,s}` with `s = pq/(p−1)`;
/// (c) `[g]_{w,s} ≤ C_w(p,q) ‖f‖_m` with `m = pq/(p+q−1)`.
pub fn check_hl_critical(spec: &FuzzSpec, p: f64, q: f64, exec: Execution) -> Result<Vec<CheckResult>> {
    check_p("hl_critical", p)?;
    let c_strong = hl_constant(p, q)?;
    let c_weak = weak_hl_constant(p, q)?;
    let s = p * q / (p - 1.0);
    let m = p * q / (p + q - 1.0);
    let nested = over_cases(spec, exec, |c| {
        let start = Instant::now();
        let len = c.f.grid().length();
        let g = critical_image(&c.f, p)?;
        let gq = lp_norm(&g, q)?;
        let weak = weak_lr_quasinorm(&g, s)?.value.to_f64();
        let fp = lp_norm(&c.f, p)?;
        let fm = lp_norm(&c.f, m)?;
        let tag = |r: CheckResult| r.with("p", p).with("q", q).timed(start);
        Ok([
            tag(per_case("hl-critical-a", c, gq, c_strong * len.powf(1.0 / q) * fp, STRICT_SLACK)),
            tag(per_case("hl-critical-b", c, gq, p.powf(1.0 / q) * len.powf(1.0 / (p * q)) * weak, STRICT_SLACK)),
            tag(per_case("hl-critical-c", c, weak, c_weak * fm, STRICT_SLACK)),
        ])
    })?;
    Ok(nested.into_iter().flatten().collect())
}

/// `[J^{1/p} f]_{BMO} ≤ (4/Γ(1/p+1)) ‖f‖_p` with the dyadic-sliding family.
pub fn check_bmo_critical(spec: &FuzzSpec, p: f64, exec: Execution) -> Result<Vec<CheckResult>> {
    check_p("bmo_critical", p)?;
    let factor = 4.0 / gamma(1.0 / p + 1.0)?;
    over_cases(spec, exec, |c| {
        let start = Instant::now();
        let g = critical_image(&c.f, p)?;
        let b = bmo_seminorm_with(&g, BmoStrategy::DyadicSliding, Execution::Sequential)?;
        Ok(per_case("bmo-critical", c, b.value.to_f64(), factor * lp_norm(&c.f, p)?, BMO_SLACK)
            .with("p", p)
            .timed(start))
    })
}

/// Right side of the per-exponent bound on `r^{−(p−1)/p} ‖J^{1/p} f‖_r`.
pub fn k_critical_bound(p: f64, r: f64, len: f64, f_p: f64) -> Result<f64> {
    let expo = (p + p / r - 1.0 / r) / (p + r - 1.0);
    Ok(2.0 * p.powf(expo) * len.powf(1.0 / r) / gamma(1.0 / p)? * h_critical(p, r)? * f_p)
}

/// Outcome of [`check_k_critical`].
#[derive(Debug, Clone)]
pub struct KCritical {
    pub checks: Vec<CheckResult>,
    /// `max ‖J^{1/p} f‖_{K_γ} / ‖f‖_p` over the inputs.
    pub m_emp: f64,
}

/// For each function: the worst exponent of the per-r bound over the K
/// scan grid (`r > 1`), and whether the K_γ scan of `J^{1/p} f` is finite
/// without its tail flag.
pub fn check_k_critical(spec: &FuzzSpec, p: f64, gamma_k: f64, exec: Execution) -> Result<KCritical> {
    check_p("k_critical", p)?;
    if !(gamma_k >= (p - 1.0) / p) {
        return Err(Error::InvalidArgument(format!("gamma = {gamma_k} must be >= (p-1)/p")));
    }
    let per = over_cases(spec, exec, |c| {
        let start = Instant::now();
        let len = c.f.grid().length();
        let g = critical_image(&c.f, p)?;
        let fp = lp_norm(&c.f, p)?;
        let profile = k_gamma_profile(&g, (p - 1.0) / p, DEFAULT_R_MAX)?;
        let mut worst: Option<(f64, f64, f64, f64)> = None;
        for &(r, v) in profile.iter().filter(|(r, _)| *r > 1.0) {
            let rhs = k_critical_bound(p, r, len, fp)?;
            let ratio = if rhs > 0.0 { v / rhs } else if v > 0.0 { f64::INFINITY } else { 0.0 };
            if worst.map_or(true, |w| ratio > w.3) {
                worst = Some((r, v, rhs, ratio));
            }
        }
        let (r, lhs, rhs, _) = worst.expect("scan has exponents above 1");
        let per_r = per_case("k-critical-r", c, lhs, rhs, STRICT_SLACK).with("p", p).with("r", r).timed(start);

        let start = Instant::now();
        let k = k_gamma_norm(&g, gamma_k, DEFAULT_R_MAX, DEFAULT_TOL)?;
        let diverged = k.tail_flag() || !k.value.is_finite();
        let ratio = if fp > 0.0 { k.value.to_f64() / fp } else { 0.0 };
        let agg = per_case("k-critical-aggregate", c, f64::from(u8::from(diverged)), 0.0, 0.0)
            .with("p", p)
            .with("gamma", gamma_k)
            .with("k_value", num(k.value.to_f64()))
            .with("ratio", num(ratio))
            .timed(start);
        Ok((per_r, agg, ratio))
    })?;
    let m_emp = per.iter().fold(0.0f64, |m, x| m.max(x.2));
    let mut checks: Vec<CheckResult> = per.iter().map(|x| x.0.clone()).collect();
    checks.extend(per.into_iter().map(|x| x.1));
    Ok(KCritical { checks, m_emp })
}

/// `‖J^{1/p} f‖_γ ≤ (4/Γ(1/p+1) + M_emp) ‖f‖_p`, with `M_emp` taken from
/// [`check_k_critical`] on the same inputs.
pub fn check_combined(spec: &FuzzSpec, p: f64, gamma_k: f64, m_emp: f64, exec: Execution) -> Result<Vec<CheckResult>> {
    check_p("combined", p)?;
    let bmo_factor = 4.0 / gamma(1.0 / p + 1.0)?;
    over_cases(spec, exec, |c| {
        let start = Instant::now();
        let g = critical_image(&c.f, p)?;
        let lhs = combined_norm(&g, gamma_k, BmoStrategy::DyadicSliding)?;
        Ok(per_case("combined", c, lhs, (bmo_factor + m_emp) * lp_norm(&c.f, p)?, BMO_SLACK)
            .with("p", p)
            .with("gamma", gamma_k)
            .with("m_emp", m_emp)
            .timed(start))
    })
}

/// `1 + Σ_{k<⌈α⌉} L^{α−k}/Γ(α−k+1)`.
pub fn sobolev_constant(alpha: f64, len: f64) -> Result<f64> {
    let order = FracOrder::new(alpha)?;
    let mut c = 1.0;
    for k in 0..order.ceil_alpha {
        let a = alpha - k as f64;
        c += len.powf(a) / gamma(a + 1.0)?;
    }
    Ok(c)
}

/// `‖J^α f‖_{W^{α,1}} ≤ (1 + Σ_{k<⌈α⌉} L^{α−k}/Γ(α−k+1)) ‖f‖_1`.
pub fn check_sobolev(spec: &FuzzSpec, alpha: f64, exec: Execution) -> Result<Vec<CheckResult>> {
    if !(alpha >= 1.0) {
        return Err(Error::InvalidArgument(format!("sobolev check needs alpha >= 1, got {alpha}")));
    }
    over_cases(spec, exec, |c| {
        let start = Instant::now();
        let g = rl_integral_with(&c.f, alpha, Execution::Sequential)?;
        let lhs = sobolev_rl_norm(&g, alpha, 1.0)?;
        let rhs = sobolev_constant(alpha, c.f.grid().length())? * lp_norm(&c.f, 1.0)?;
        Ok(per_case("sobolev", c, lhs, rhs, SOBOLEV_SLACK).with("alpha", alpha).timed(start))
    })
}

/// Which case of the sharpness construction a parameter triple falls in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SharpnessRegime {
    /// `η₂ > 1`: `D^α J^α t^γ = t^γ` leaves L^{η₂} for `γ = −(η₂+1)/(2η₂)`.
    HighIntegrability,
    /// `α < η₁ ≤ 2`, `η₂ = 1`: `D^{η₁} J^α t^γ ∝ t^{γ−η₁+α}` leaves L¹.
    ExcessOrder,
    /// `η₁ > 2`, `η₂ = 1`, `α < 2`: reduces to the previous case with `η₁ = 2`.
    Reduced,
}

/// Shells `[2^{−k−1}, 2^{−k}]`, `k < shells`, each split into `m` equal
/// cells, above a uniform core `[0, 2^{−shells}]` of `m` cells.
pub fn dyadic_shell_grid(shells: usize, m: usize) -> Result<Grid> {
    let mut nodes = Vec::with_capacity((shells + 1) * m + 1);
    let core = 0.5f64.powi(shells as i32);
    for i in 0..m {
        nodes.push(core * i as f64 / m as f64);
    }
    for k in (0..shells).rev() {
        let a = 0.5f64.powi(k as i32 + 1);
        for i in 0..m {
            nodes.push(a + a * i as f64 / m as f64);
        }
    }
    nodes.push(1.0);
    Grid::from_nodes(nodes)
}

/// Numerically confirm the divergence rate behind the sharpness of the
/// Sobolev mapping: fit the exponent `c` in `∫_ε^{2ε} |g|^{η₂} ∝ ε^c` over
/// `ε = 2^{−4}..2^{−12}` and compare with the closed-form exponent
/// `1 + η₂(γ − η₁ + α)`. A negative exponent means the norm on `(ε, 1)`
/// diverges as `ε → 0`. `gamma_t` overrides the regime's default `γ`.
pub fn check_sharpness(alpha: f64, eta1: f64, eta2: f64, gamma_t: Option<f64>) -> Result<CheckResult> {
    let start = Instant::now();
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(format!("alpha = {alpha} must be positive")));
    }
    let (regime, eta1, gamma_t, tol) = if eta2 > 1.0 {
        (SharpnessRegime::HighIntegrability, alpha, gamma_t.unwrap_or(-(eta2 + 1.0) / (2.0 * eta2)), 0.1)
    } else if eta2 == 1.0 && alpha < eta1 && eta1 <= 2.0 {
        (SharpnessRegime::ExcessOrder, eta1, gamma_t.unwrap_or((eta1 - alpha - 2.0) / 2.0), 0.2)
    } else if eta2 == 1.0 && eta1 > 2.0 && alpha < 2.0 {
        (SharpnessRegime::Reduced, 2.0, gamma_t.unwrap_or((-alpha) / 2.0), 0.2)
    } else {
        return Err(Error::InvalidArgument(format!(
            "(alpha, eta1, eta2) = ({alpha}, {eta1}, {eta2}) is outside the sharpness regimes"
        )));
    };
    if !(gamma_t > -1.0) {
        return Err(Error::InvalidArgument(format!("gamma = {gamma_t} must exceed -1")));
    }
    let c_pred = 1.0 + eta2 * (gamma_t - eta1 + alpha);
    let grid = dyadic_shell_grid(20, 128)?;
    let f = sample(&AnalyticFunction::new(AnalyticKind::Power(gamma_t))?, grid, Reconstruction::CellConstant)?;
    let g = rl_derivative_with(&rl_integral_with(&f, alpha, Execution::Sequential)?, eta1, Execution::Sequential)?;
    let mut x = Vec::new();
    let mut y = Vec::new();
    for j in 4..=12 {
        let eps = 0.5f64.powi(j);
        let shell = lp_norm_on(&g, eps, 2.0 * eps, eta2)?.powf(eta2);
        x.push(eps.ln());
        y.push(shell.ln());
    }
    let c_fit = ls_slope(&x, &y);
    let name = match regime {
        SharpnessRegime::HighIntegrability => "high-integrability",
        SharpnessRegime::ExcessOrder => "excess-order",
        SharpnessRegime::Reduced => "reduced",
    };
    Ok(CheckResult::new("sharpness", (c_fit - c_pred).abs(), tol * c_pred.abs(), 0.0)
        .with("regime", name)
        .with("alpha", alpha)
        .with("eta1", eta1)
        .with("eta2", eta2)
        .with("gamma", gamma_t)
        .with("c_fit", c_fit)
        .with("c_pred", c_pred)
        .with("divergent", c_fit <= 0.0)
        .with("tol", tol)
        .timed(start))
}

/// Empirical constants `C(r) = ‖f‖_r / (r ‖f‖_1^{1/r} [f]_{BMO}^{1−1/r})`
/// for a gallery member, with closed-form L^r norms on (0, 1) and the BMO
/// seminorm from a graded grid of 4096 cells. Passes when every C(r) is
/// finite and `C(r_hi)/C(r_lo)` lies in [0.75, 1.25], where `r_lo`, `r_hi`
/// are 16 and 64 when listed, else the first and last exponents.
pub fn check_iterbmo(f: &AnalyticFunction, r_list: &[f64]) -> Result<CheckResult> {
    let start = Instant::now();
    if r_list.len() < 2 || r_list.iter().any(|r| !(*r >= 1.0) || !r.is_finite()) {
        return Err(Error::InvalidArgument("need at least two finite exponents >= 1".into()));
    }
    let lr = |r: f64| -> Result<f64> {
        match exact_lr_norm(f, r, 0.0, 1.0)? {
            ExtendedReal::Finite(v) => Ok(v),
            ExtendedReal::Infinite => Err(Error::InvalidArgument(format!("f is not in L^{r}"))),
        }
    };
    let grid = gallery_grid(&f.kind, 4096)?;
    let sampled = sample(f, grid, Reconstruction::CellConstant)?;
    let bmo = bmo_seminorm_with(&sampled, BmoStrategy::DyadicSliding, Execution::default())?.value.to_f64();
    if !(bmo > 0.0) {
        return Err(Error::InvalidArgument("BMO seminorm vanishes; the constant is undefined".into()));
    }
    let l1 = lr(1.0)?;
    let mut cs = Vec::with_capacity(r_list.len());
    for &r in r_list {
        cs.push(lr(r)? / (r * l1.powf(1.0 / r) * bmo.powf(1.0 - 1.0 / r)));
    }
    let pick = |target: f64, fallback: usize| r_list.iter().position(|&r| r == target).unwrap_or(fallback);
    let (lo, hi) = (pick(16.0, 0), pick(64.0, r_list.len() - 1));
    let finite = cs.iter().all(|c| c.is_finite());
    let ratio = cs[hi] / cs[lo];
    let lhs = if finite { (ratio - 1.0).abs() } else { f64::INFINITY };
    let mut out = CheckResult::new("iterbmo", lhs, 0.25, 0.0)
        .with("fn", format!("{:?}", f.kind))
        .with("bmo", bmo)
        .with("ratio", num(ratio))
        .with("c_max", num(cs.iter().fold(0.0f64, |m, c| m.max(*c))));
    for (r, c) in r_list.iter().zip(&cs) {
        out = out.with(&format!("c_r{r}"), num(*c));
    }
    Ok(out.timed(start))
}

use super::bmo::{bmo_seminorm, BmoStrategy};
use super::lebesgue::ln_lp_of_pieces;
use super::profile::{magnitude_pieces, Piece};
use super::{Extremizer, NormResult};
use crate::error::{Error, Result};
use crate::funcspace::{exact_lr_norm, AnalyticFunction, GridFunction};
use crate::par::{first_argmax, map_indexed, Execution};
use crate::search::golden_section_max;
use crate::specfun::ExtendedReal;

pub const DEFAULT_R_MAX: f64 = 16384.0;
pub const DEFAULT_TOL: f64 = 1e-4;
/// Points of the logarithmic exponent grid.
pub const K_GRID_POINTS: usize = 200;

/// Anything with computable `ln ‖f‖_{L^r}` for `r ≥ 1`. `+∞` marks a
/// divergent norm, `−∞` the zero function.
pub trait LrSource: Sync {
    fn ln_lr_norm(&self, r: f64) -> f64;
}

/// Grid functions, with the magnitude profile built once.
struct GridLr {
    pieces: Vec<Piece>,
}

impl LrSource for GridLr {
    fn ln_lr_norm(&self, r: f64) -> f64 {
        ln_lp_of_pieces(&self.pieces, r)
    }
}

impl LrSource for GridFunction {
    fn ln_lr_norm(&self, r: f64) -> f64 {
        ln_lp_of_pieces(&magnitude_pieces(self), r)
    }
}

/// Exact L^r norms of a gallery function on `[t0, t1]`.
pub struct ClosedFormLr {
    pub f: AnalyticFunction,
    pub t0: f64,
    pub t1: f64,
}

impl ClosedFormLr {
    pub fn new(f: AnalyticFunction, t0: f64, t1: f64) -> Result<Self> {
        exact_lr_norm(&f, 1.0, t0, t1)?;
        Ok(Self { f, t0, t1 })
    }
}

impl LrSource for ClosedFormLr {
    fn ln_lr_norm(&self, r: f64) -> f64 {
        match exact_lr_norm(&self.f, r, self.t0, self.t1) {
            Ok(ExtendedReal::Finite(v)) => v.ln(),
            Ok(ExtendedReal::Infinite) => f64::INFINITY,
            Err(_) => f64::NAN,
        }
    }
}

fn check_scan(gamma: f64, r_max: f64, tol: f64) -> Result<()> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::domain("k_gamma_norm", format!("gamma = {gamma} must be positive")));
    }
    if !(r_max >= 1.0) || !r_max.is_finite() {
        return Err(Error::domain("k_gamma_norm", format!("r_max = {r_max} must be finite and >= 1")));
    }
    if !(tol > 0.0) {
        return Err(Error::domain("k_gamma_norm", format!("tol = {tol} must be positive")));
    }
    Ok(())
}

fn exponent_grid(r_max: f64) -> Vec<f64> {
    if r_max == 1.0 {
        return vec![1.0];
    }
    let top = r_max.ln();
    let last = K_GRID_POINTS - 1;
    (0..K_GRID_POINTS)
        .map(|i| if i == last { r_max } else { (top * i as f64 / last as f64).exp() })
        .collect()
}

/// `(r, r^{−γ}‖f‖_r)` on the logarithmic exponent grid.
pub fn k_gamma_profile<S: LrSource + ?Sized>(src: &S, gamma: f64, r_max: f64) -> Result<Vec<(f64, f64)>> {
    check_scan(gamma, r_max, DEFAULT_TOL)?;
    Ok(exponent_grid(r_max)
        .into_iter()
        .map(|r| (r, (src.ln_lr_norm(r) - gamma * r.ln()).exp()))
        .collect())
}

/// `sup_{1 ≤ r ≤ r_max} r^{−γ}‖f‖_{L^r}` for any [`LrSource`]: a
/// 200-point logarithmic scan, then golden-section refinement in `ln r`
/// around the best grid point.
pub fn k_gamma_scan<S: LrSource + ?Sized>(src: &S, gamma: f64, r_max: f64, tol: f64, exec: Execution) -> Result<NormResult> {
    check_scan(gamma, r_max, tol)?;
    let rs = exponent_grid(r_max);
    let objective = |r: f64| src.ln_lr_norm(r) - gamma * r.ln();
    let logs = map_indexed(exec, rs.len(), |i| objective(rs[i]));
    let mut out = NormResult::new("k-gamma", &[("gamma", gamma), ("r_max", r_max), ("tol", tol)], "log-grid+golden");
    out.evals = rs.len() as u64;
    if let Some(i) = logs.iter().position(|v| v.is_nan()) {
        return Err(Error::Unavailable(format!("L^r norm unavailable at r = {}", rs[i])));
    }
    if let Some(i) = logs.iter().position(|v| *v == f64::INFINITY) {
        out.value = ExtendedReal::Infinite;
        out.extremizer = Some(Extremizer::Exponent { r: rs[i], tail: i + 1 == rs.len() });
        return Ok(out);
    }
    let best = first_argmax(&logs).unwrap_or(0);
    let last = rs.len() - 1;
    if logs[best] == f64::NEG_INFINITY {
        out.value = ExtendedReal::Finite(0.0);
        out.extremizer = Some(Extremizer::Exponent { r: 1.0, tail: false });
        return Ok(out);
    }
    let (mut r_best, mut v_best) = (rs[best], logs[best]);
    if rs.len() > 1 {
        let lo = rs[best.saturating_sub(1)].ln();
        let hi = rs[(best + 1).min(last)].ln();
        let (x, v, n) = golden_section_max(|x| objective(x.exp()), lo, hi, tol, 200);
        out.evals += n as u64;
        if v > v_best {
            r_best = x.exp();
            v_best = v;
        }
    }
    out.value = ExtendedReal::finite(v_best.exp());
    out.extremizer = Some(Extremizer::Exponent { r: r_best, tail: best == last && rs.len() > 1 });
    Ok(out)
}

/// `‖f‖_{K_γ}` over `r ∈ [1, r_max]`.
pub fn k_gamma_norm(f: &GridFunction, gamma: f64, r_max: f64, tol: f64) -> Result<NormResult> {
    let src = GridLr { pieces: magnitude_pieces(f) };
    k_gamma_scan(&src, gamma, r_max, tol, Execution::default())
}

/// `[f]_{BMO} + ‖f‖_{K_γ}` with the default K_γ scan.
pub fn combined_norm(f: &GridFunction, gamma: f64, strategy: BmoStrategy) -> Result<f64> {
    let b = bmo_seminorm(f, strategy)?.value.to_f64();
    let k = k_gamma_norm(f, gamma, DEFAULT_R_MAX, DEFAULT_TOL)?.value.to_f64();
    Ok(b + k)
}

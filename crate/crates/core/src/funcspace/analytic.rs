use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::grid::Grid;
use super::gridfn::{GridFunction, Reconstruction, VectorNorm};
use crate::error::{Error, Result};
use crate::specfun::{ln_gamma_unchecked, ln_upper_gamma, ExtendedReal};

/// Scalar profiles of the closed-form witness functions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", content = "param", rename_all = "kebab-case")]
pub enum AnalyticKind {
    Constant(f64),
    /// `t^γ`, γ > −1.
    Power(f64),
    /// `(log(1/t))^γ` on (0, 1), γ > 0.
    LogInv(f64),
    /// `log t` on (0, 1).
    LogPlain,
    /// `χ_{(1/2,1]}(t) (log(1/(t − 1/2)))^γ` on (0, 1), γ > 0.
    ShiftedLogPow(f64),
    /// `max{log(1/t), 1/log(t e²)}` on (0, 1).
    JohnsonNeugebauer,
}

/// A scalar profile times a vector `amplitude · direction` in R^d.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticFunction {
    pub kind: AnalyticKind,
    pub amplitude: f64,
    /// Unit vector (Euclidean).
    pub direction: Vec<f64>,
}

impl AnalyticFunction {
    pub fn new(kind: AnalyticKind) -> Result<Self> {
        match kind {
            AnalyticKind::Power(g) if !(g > -1.0) => {
                return Err(Error::InvalidArgument(format!("power exponent {g} must exceed -1")))
            }
            AnalyticKind::LogInv(g) | AnalyticKind::ShiftedLogPow(g) if !(g > 0.0) => {
                return Err(Error::InvalidArgument(format!("log exponent {g} must be positive")))
            }
            AnalyticKind::Constant(c) if !c.is_finite() => {
                return Err(Error::InvalidArgument("constant must be finite".into()))
            }
            _ => {}
        }
        Ok(Self { kind, amplitude: 1.0, direction: vec![1.0] })
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// Replace the direction by `v / |v|`.
    pub fn with_direction(mut self, v: &[f64]) -> Result<Self> {
        let n = VectorNorm::Euclidean.of(v);
        if v.is_empty() || !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidArgument("direction must be a nonzero finite vector".into()));
        }
        self.direction = v.iter().map(|x| x / n).collect();
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }

    /// Interval on which the profile is defined.
    pub fn domain(&self) -> (f64, f64) {
        match self.kind {
            AnalyticKind::Constant(_) => (f64::NEG_INFINITY, f64::INFINITY),
            AnalyticKind::Power(_) => (0.0, f64::INFINITY),
            _ => (0.0, 1.0),
        }
    }

    /// Points where the profile is unbounded.
    pub fn poles(&self) -> Vec<f64> {
        match self.kind {
            AnalyticKind::Constant(_) => vec![],
            AnalyticKind::Power(g) if g >= 0.0 => vec![],
            AnalyticKind::Power(_) | AnalyticKind::LogInv(_) | AnalyticKind::LogPlain => vec![0.0],
            AnalyticKind::ShiftedLogPow(_) => vec![0.5],
            AnalyticKind::JohnsonNeugebauer => vec![0.0, (-2f64).exp()],
        }
    }

    /// The scalar profile (without amplitude), possibly infinite at a pole.
    pub fn profile(&self, t: f64) -> f64 {
        match self.kind {
            AnalyticKind::Constant(c) => c,
            AnalyticKind::Power(g) => {
                if g == 0.0 {
                    1.0
                } else if t == 0.0 && g < 0.0 {
                    f64::INFINITY
                } else {
                    t.powf(g)
                }
            }
            AnalyticKind::LogInv(g) => (-t.ln()).powf(g),
            AnalyticKind::LogPlain => t.ln(),
            AnalyticKind::ShiftedLogPow(g) => {
                if t <= 0.5 {
                    0.0
                } else {
                    (-(t - 0.5).ln()).powf(g)
                }
            }
            AnalyticKind::JohnsonNeugebauer => {
                let a = -t.ln();
                let l = t.ln() + 2.0;
                if l == 0.0 {
                    f64::INFINITY
                } else {
                    a.max(1.0 / l)
                }
            }
        }
    }

    /// Magnitude `‖f(t)‖ = |amplitude · profile(t)|`.
    pub fn magnitude(&self, t: f64) -> f64 {
        (self.amplitude * self.profile(t)).abs()
    }

    fn is_pole(&self, t: f64) -> bool {
        self.poles()
            .iter()
            .any(|&p| (t - p).abs() <= 4.0 * f64::EPSILON * p.abs().max(f64::MIN_POSITIVE))
    }
}

/// Sample `f` on `grid`: node values (nodal-linear) or cell midpoints
/// (cell-constant). Nodal sampling refuses nodes sitting on a pole.
pub fn sample(f: &AnalyticFunction, grid: impl Into<Arc<Grid>>, mode: Reconstruction) -> Result<GridFunction> {
    let grid = grid.into();
    let (lo, hi) = f.domain();
    if grid.t0() < lo || grid.t1() > hi {
        return Err(Error::InvalidArgument(format!(
            "grid [{}, {}] leaves the domain [{lo}, {hi}] of {:?}",
            grid.t0(),
            grid.t1(),
            f.kind
        )));
    }
    let points: Vec<f64> = match mode {
        Reconstruction::NodalLinear => grid.nodes().to_vec(),
        Reconstruction::CellConstant => (0..grid.cells()).map(|j| grid.midpoint(j)).collect(),
    };
    let d = f.dim();
    let mut values = Vec::with_capacity(points.len() * d);
    for t in points {
        if mode == Reconstruction::NodalLinear && f.is_pole(t) {
            return Err(Error::Pole(t));
        }
        let s = f.amplitude * f.profile(t);
        if !s.is_finite() {
            return Err(Error::Pole(t));
        }
        values.extend(f.direction.iter().map(|u| s * u));
    }
    GridFunction::new(grid, d, mode, values, VectorNorm::Euclidean)
}

/// Closed-form `‖f‖_{L^r(t0, t1)}` where one is known.
///
/// Available for constants, powers (t0 ≥ 0), and on (0, 1) for the
/// logarithmic profiles `LogInv`, `LogPlain` and `ShiftedLogPow`.
pub fn exact_lr_norm(f: &AnalyticFunction, r: f64, t0: f64, t1: f64) -> Result<ExtendedReal> {
    if !(r >= 1.0) || r.is_nan() {
        return Err(Error::domain("exact_lr_norm", format!("r = {r} must be >= 1")));
    }
    if !(t0 < t1) {
        return Err(Error::InvalidArgument(format!("need t0 < t1, got [{t0}, {t1}]")));
    }
    let amp = f.amplitude.abs();
    if amp == 0.0 {
        return Ok(ExtendedReal::Finite(0.0));
    }
    let unit_interval = t0 == 0.0 && t1 == 1.0;
    let unavailable = || Error::Unavailable(format!("{:?} on [{t0}, {t1}]", f.kind));
    let ln_norm = match f.kind {
        AnalyticKind::Constant(c) => {
            if c == 0.0 {
                return Ok(ExtendedReal::Finite(0.0));
            }
            c.abs().ln() + (t1 - t0).ln() / r
        }
        AnalyticKind::Power(g) => {
            if t0 < 0.0 {
                return Err(unavailable());
            }
            let k = r * g + 1.0;
            if t0 == 0.0 {
                if k <= 0.0 {
                    return Ok(ExtendedReal::Infinite);
                }
                (k * t1.ln() - k.ln()) / r
            } else if k == 0.0 {
                (t1 / t0).ln().ln() / r
            } else {
                (((t1.powf(k) - t0.powf(k)) / k).ln()) / r
            }
        }
        AnalyticKind::LogInv(g) if unit_interval => ln_gamma_unchecked(r * g + 1.0) / r,
        AnalyticKind::LogPlain if unit_interval => ln_gamma_unchecked(r + 1.0) / r,
        AnalyticKind::ShiftedLogPow(g) if unit_interval => {
            // ∫_0^{1/2} log(1/x)^{rγ} dx = Γ(rγ + 1, log 2)
            ln_upper_gamma(r * g + 1.0, 2f64.ln())? / r
        }
        _ => return Err(unavailable()),
    };
    Ok(ExtendedReal::finite(amp * ln_norm.exp()))
}

/// `J^α t^γ = (Γ(γ+1)/Γ(γ+α+1)) t^{γ+α}` with base point 0: returns the
/// coefficient and the exponent.
pub fn exact_rl_integral_power(gamma: f64, alpha: f64) -> Result<(f64, f64)> {
    if !(gamma > -1.0) || !(alpha > 0.0) {
        return Err(Error::domain(
            "exact_rl_integral_power",
            format!("need gamma > -1 and alpha > 0, got ({gamma}, {alpha})"),
        ));
    }
    let c = (ln_gamma_unchecked(gamma + 1.0) - ln_gamma_unchecked(gamma + alpha + 1.0)).exp();
    Ok((c, gamma + alpha))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(n: usize) -> Grid {
        Grid::uniform(0.0, 1.0, n).unwrap()
    }

    #[test]
    fn constant_samples() {
        let f = AnalyticFunction::new(AnalyticKind::Constant(3.0)).unwrap();
        let g = sample(&f, unit(5), Reconstruction::NodalLinear).unwrap();
        assert!(g.values().iter().all(|&v| v == 3.0));
    }

    #[test]
    fn power_nodal() {
        let f = AnalyticFunction::new(AnalyticKind::Power(1.0)).unwrap();
        let g = sample(&f, unit(2), Reconstruction::NodalLinear).unwrap();
        assert_eq!(g.values(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn loginv_midpoints() {
        let f = AnalyticFunction::new(AnalyticKind::LogInv(1.0)).unwrap();
        let g = sample(&f, unit(2), Reconstruction::CellConstant).unwrap();
        assert!((g.values()[0] - 4f64.ln()).abs() < 1e-15);
        assert!((g.values()[1] - (4.0f64 / 3.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn nodal_sampling_refuses_poles() {
        let f = AnalyticFunction::new(AnalyticKind::LogInv(1.0)).unwrap();
        assert_eq!(sample(&f, unit(4), Reconstruction::NodalLinear), Err(Error::Pole(0.0)));
        let jn = AnalyticFunction::new(AnalyticKind::JohnsonNeugebauer).unwrap();
        let g = Grid::graded_at(0.0, 1.0, (-2f64).exp(), 8, 8, 3.0).unwrap();
        assert!(sample(&jn, g.clone(), Reconstruction::NodalLinear).is_err());
        assert!(sample(&jn, g, Reconstruction::CellConstant).is_ok());
        let shifted = AnalyticFunction::new(AnalyticKind::ShiftedLogPow(1.0)).unwrap();
        assert!(sample(&shifted, unit(4), Reconstruction::NodalLinear).is_err());
    }

    #[test]
    fn domain_and_parameter_checks() {
        assert!(AnalyticFunction::new(AnalyticKind::Power(-1.0)).is_err());
        assert!(AnalyticFunction::new(AnalyticKind::LogInv(0.0)).is_err());
        let f = AnalyticFunction::new(AnalyticKind::LogPlain).unwrap();
        assert!(sample(&f, Grid::uniform(0.0, 2.0, 4).unwrap(), Reconstruction::CellConstant).is_err());
    }

    #[test]
    fn direction_is_normalised() {
        let f = AnalyticFunction::new(AnalyticKind::Constant(2.0))
            .unwrap()
            .with_direction(&[3.0, 4.0])
            .unwrap();
        let g = sample(&f, unit(1), Reconstruction::NodalLinear).unwrap();
        assert_eq!(g.dim(), 2);
        assert!((g.sample(0)[0] - 1.2).abs() < 1e-15);
        assert!((g.sample(0)[1] - 1.6).abs() < 1e-15);
    }

    #[test]
    fn exact_norm_examples() {
        let loginv = AnalyticFunction::new(AnalyticKind::LogInv(1.0)).unwrap();
        assert_eq!(exact_lr_norm(&loginv, 1.0, 0.0, 1.0).unwrap(), ExtendedReal::Finite(1.0));
        let p = AnalyticFunction::new(AnalyticKind::Power(-0.5)).unwrap();
        assert_eq!(exact_lr_norm(&p, 2.0, 0.0, 1.0).unwrap(), ExtendedReal::Infinite);
        let c = AnalyticFunction::new(AnalyticKind::Constant(2.0)).unwrap();
        let v = exact_lr_norm(&c, 4.0, 0.0, 1.0).unwrap().to_f64();
        assert!((v - 2.0).abs() < 1e-15);
        let jn = AnalyticFunction::new(AnalyticKind::JohnsonNeugebauer).unwrap();
        assert!(matches!(exact_lr_norm(&jn, 2.0, 0.0, 1.0), Err(Error::Unavailable(_))));
        assert!(matches!(exact_lr_norm(&loginv, 2.0, 0.0, 0.5), Err(Error::Unavailable(_))));
    }

    #[test]
    fn power_norm_approaches_divergence_from_above() {
        let p = AnalyticFunction::new(AnalyticKind::Power(-0.5)).unwrap();
        let mut last = 0.0;
        for r in [1.0, 1.5, 1.9, 1.99, 1.99999] {
            let v = exact_lr_norm(&p, r, 0.0, 1.0).unwrap().to_f64();
            assert!(v > last);
            last = v;
        }
        assert!(last > 100.0);
    }

    #[test]
    fn euler_power_identity() {
        assert_eq!(exact_rl_integral_power(0.0, 1.0).unwrap(), (1.0, 1.0));
        let (c, e) = exact_rl_integral_power(0.0, 0.5).unwrap();
        assert!((c - std::f64::consts::FRAC_2_SQRT_PI).abs() < 1e-14);
        assert_eq!(e, 0.5);
        let (c, e) = exact_rl_integral_power(1.0, 1.0).unwrap();
        assert!((c - 0.5).abs() < 1e-15);
        assert_eq!(e, 2.0);
    }

    #[test]
    fn euler_identity_matches_quadrature() {
        // Independent check: ∫_0^1 (1−s)^{α−1} s^γ ds / Γ(α) by substitution
        // s = 1 − u^{1/α}, which removes the kernel singularity.
        for (g, a) in [(0.0, 0.5), (1.0, 0.3), (2.5, 1.7)] {
            let n = 200_000;
            let mut sum = 0.0;
            for i in 0..n {
                let u = (i as f64 + 0.5) / n as f64;
                let s = 1.0 - u.powf(1.0 / a);
                sum += s.powf(g);
            }
            let quad = sum / n as f64 / a / ln_gamma_unchecked(a).exp();
            let (c, _) = exact_rl_integral_power(g, a).unwrap();
            assert!((quad - c).abs() < 1e-6, "gamma={g} alpha={a}: {quad} vs {c}");
        }
    }
}

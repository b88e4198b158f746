//! Norm functionals on grid functions. Each scan-type functional returns a
//! [`NormResult`] carrying the extremizer it attained.

mod bmo;
mod kgamma;
mod lebesgue;
pub(crate) mod profile;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::specfun::ExtendedReal;

pub use bmo::{avg, bmo_intervals, bmo_seminorm, bmo_seminorm_with, mean_oscillation, BmoStrategy};
pub use kgamma::{
    combined_norm, k_gamma_norm, k_gamma_profile, k_gamma_scan, ClosedFormLr, LrSource, DEFAULT_R_MAX, DEFAULT_TOL,
    K_GRID_POINTS,
};
pub use lebesgue::{distribution_measure, lp_norm, lp_norm_on, weak_lr_quasinorm};

/// Where a sup was attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Extremizer {
    Interval { a: f64, b: f64 },
    /// `tail` is set when the maximum sits at the end of the scan.
    Exponent { r: f64, tail: bool },
    Level { lambda: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub functional: String,
    pub params: BTreeMap<String, f64>,
    pub value: ExtendedReal,
    pub extremizer: Option<Extremizer>,
    pub strategy: String,
    pub evals: u64,
}

impl NormResult {
    pub(crate) fn new(functional: &str, params: &[(&str, f64)], strategy: &str) -> Self {
        Self {
            functional: functional.to_string(),
            params: params.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value: ExtendedReal::Finite(0.0),
            extremizer: None,
            strategy: strategy.to_string(),
            evals: 0,
        }
    }

    /// Whether a K_γ scan peaked at its last exponent.
    pub fn tail_flag(&self) -> bool {
        matches!(self.extremizer, Some(Extremizer::Exponent { tail: true, .. }))
    }
}

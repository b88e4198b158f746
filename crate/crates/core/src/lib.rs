//! Riemann-Liouville fractional calculus on bounded intervals, together with
//! the norm functionals used to study its mapping properties (L^p, weak L^r,
//! BMO, the Karapetyants-Rubin K_γ norm and RL fractional Sobolev norms) and
//! a harness that checks the known operator inequalities numerically.
//!
//! Functions are carried as [`GridFunction`]s: samples on a strictly
//! increasing node set plus a reconstruction rule (nodal-linear or
//! cell-constant). Every operator and functional acts on the reconstruction
//! exactly where a closed form exists.

pub mod error;
pub mod fracops;
pub mod funcspace;
pub mod harness;
pub mod normfun;
pub mod par;
pub mod rng;
pub mod search;
pub mod specfun;

pub use error::{Error, Result};
pub use fracops::{rl_derivative, rl_integral, semigroup_defect, sobolev_rl_norm, FracOrder};
pub use funcspace::{
    make_grid, sample, AnalyticFunction, AnalyticKind, Anchor, Grid, GridFunction,
    Reconstruction, VectorNorm,
};
pub use normfun::{
    avg, bmo_seminorm, combined_norm, distribution_measure, k_gamma_norm, lp_norm,
    mean_oscillation, weak_lr_quasinorm, BmoStrategy, NormResult,
};
pub use par::Execution;
pub use specfun::ExtendedReal;

/// Toolkit version echoed in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

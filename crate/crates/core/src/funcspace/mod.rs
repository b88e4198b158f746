//! Grids, sampled functions and the gallery of closed-form witness functions.

mod analytic;
mod csvio;
mod grid;
mod gridfn;

pub use analytic::{exact_lr_norm, exact_rl_integral_power, sample, AnalyticFunction, AnalyticKind};
pub use csvio::{read_csv, write_csv};
pub use grid::{make_grid, Anchor, Grid};
pub use gridfn::{GridFunction, Reconstruction, VectorNorm};

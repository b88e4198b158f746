use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::grid::Grid;
use crate::error::{Error, Result};

/// How values between samples are reconstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reconstruction {
    /// One vector per node, linear in between.
    NodalLinear,
    /// One vector per cell, constant on the cell.
    CellConstant,
}

/// Norm on the value space R^d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VectorNorm {
    #[default]
    Euclidean,
    Max,
    /// Sum of absolute values.
    Abs,
}

impl VectorNorm {
    pub fn of(self, v: &[f64]) -> f64 {
        match (self, v.len()) {
            (_, 1) => v[0].abs(),
            (VectorNorm::Euclidean, _) => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            (VectorNorm::Max, _) => v.iter().fold(0.0, |m, x| m.max(x.abs())),
            (VectorNorm::Abs, _) => v.iter().map(|x| x.abs()).sum(),
        }
    }
}

/// A sampled function `[t0, t1] → R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Arc<Grid>,
    dim: usize,
    mode: Reconstruction,
    values: Vec<f64>,
    norm: VectorNorm,
}

impl GridFunction {
    /// `values` is row-major: entry `k` of sample `i` lives at `i * dim + k`.
    pub fn new(
        grid: impl Into<Arc<Grid>>,
        dim: usize,
        mode: Reconstruction,
        values: Vec<f64>,
        norm: VectorNorm,
    ) -> Result<Self> {
        let grid = grid.into();
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        let count = match mode {
            Reconstruction::NodalLinear => grid.node_count(),
            Reconstruction::CellConstant => grid.cells(),
        };
        if values.len() != count * dim {
            return Err(Error::InvalidArgument(format!(
                "expected {} values ({count} samples of dimension {dim}), got {}",
                count * dim,
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite sample value {bad}")));
        }
        Ok(Self { grid, dim, mode, values, norm })
    }

    pub fn scalar_nodal(grid: impl Into<Arc<Grid>>, values: Vec<f64>) -> Result<Self> {
        Self::new(grid, 1, Reconstruction::NodalLinear, values, VectorNorm::Euclidean)
    }

    pub fn scalar_cells(grid: impl Into<Arc<Grid>>, values: Vec<f64>) -> Result<Self> {
        Self::new(grid, 1, Reconstruction::CellConstant, values, VectorNorm::Euclidean)
    }

    pub fn zeros(grid: impl Into<Arc<Grid>>, dim: usize, mode: Reconstruction) -> Result<Self> {
        let grid = grid.into();
        let count = match mode {
            Reconstruction::NodalLinear => grid.node_count(),
            Reconstruction::CellConstant => grid.cells(),
        };
        Self::new(grid, dim, mode, vec![0.0; count * dim], VectorNorm::Euclidean)
    }

    pub(crate) fn from_parts(grid: Arc<Grid>, dim: usize, mode: Reconstruction, values: Vec<f64>, norm: VectorNorm) -> Self {
        debug_assert_eq!(
            values.len(),
            dim * match mode {
                Reconstruction::NodalLinear => grid.node_count(),
                Reconstruction::CellConstant => grid.cells(),
            }
        );
        Self { grid, dim, mode, values, norm }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn grid_arc(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Reconstruction {
        self.mode
    }

    pub fn vector_norm(&self) -> VectorNorm {
        self.norm
    }

    pub fn with_norm(mut self, norm: VectorNorm) -> Self {
        self.norm = norm;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of stored samples (nodes or cells).
    pub fn sample_count(&self) -> usize {
        self.values.len() / self.dim
    }

    pub fn sample(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    /// Endpoint values of cell `j` under the reconstruction.
    pub fn cell_ends(&self, j: usize) -> (&[f64], &[f64]) {
        match self.mode {
            Reconstruction::NodalLinear => (self.sample(j), self.sample(j + 1)),
            Reconstruction::CellConstant => (self.sample(j), self.sample(j)),
        }
    }

    /// ∫ f over cell `j`, per component.
    pub fn cell_integral(&self, j: usize, out: &mut [f64]) {
        let w = self.grid.width(j);
        let (a, b) = self.cell_ends(j);
        for k in 0..self.dim {
            out[k] = 0.5 * w * (a[k] + b[k]);
        }
    }

    /// Value of the reconstruction at `t`; `None` outside the interval.
    pub fn eval(&self, t: f64) -> Option<Vec<f64>> {
        let j = self.grid.cell_of(t)?;
        let (a, b) = self.cell_ends(j);
        let u = (t - self.grid.nodes()[j]) / self.grid.width(j);
        Some(a.iter().zip(b).map(|(x, y)| x + u * (y - x)).collect())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| c * v).collect(),
            ..self.clone()
        }
    }

    /// `a·f + b·g` for functions sharing grid, dimension and reconstruction.
    pub fn linear_combination(a: f64, f: &Self, b: f64, g: &Self) -> Result<Self> {
        if f.grid.nodes() != g.grid.nodes() || f.dim != g.dim || f.mode != g.mode {
            return Err(Error::InvalidArgument("linear combination of incompatible grid functions".into()));
        }
        let values = f.values.iter().zip(&g.values).map(|(x, y)| a * x + b * y).collect();
        Ok(Self { values, ..f.clone() })
    }

    /// Nodal-linear version. Cell-constant data is moved to the nodes by
    /// averaging adjacent cells; the end nodes take their single cell value.
    pub fn to_nodal(&self) -> Self {
        match self.mode {
            Reconstruction::NodalLinear => self.clone(),
            Reconstruction::CellConstant => {
                let n = self.grid.cells();
                let d = self.dim;
                let mut values = Vec::with_capacity((n + 1) * d);
                values.extend_from_slice(self.sample(0));
                for i in 1..n {
                    let (l, r) = (self.sample(i - 1), self.sample(i));
                    values.extend(l.iter().zip(r).map(|(x, y)| 0.5 * (x + y)));
                }
                values.extend_from_slice(self.sample(n - 1));
                Self { values, mode: Reconstruction::NodalLinear, ..self.clone() }
            }
        }
    }

    /// Mirror image `t ↦ t0 + t1 − t` on the reflected grid.
    pub fn reflect(&self) -> Self {
        let grid = Arc::new(self.grid.reflect());
        let d = self.dim;
        let count = self.sample_count();
        let mut values = Vec::with_capacity(self.values.len());
        for i in (0..count).rev() {
            values.extend_from_slice(&self.values[i * d..(i + 1) * d]);
        }
        Self { grid, values, ..self.clone() }
    }

    /// Norm of each stored sample.
    pub fn sample_norms(&self) -> Vec<f64> {
        (0..self.sample_count()).map(|i| self.norm.of(self.sample(i))).collect()
    }
}

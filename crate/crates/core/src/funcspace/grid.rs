use crate::error::{Error, Result};

/// Which end of the interval a graded grid clusters toward.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Left,
    Right,
    /// Uniform spacing; the grading exponent is ignored.
    None,
}

/// Strictly increasing node set `t0 = τ_0 < … < τ_n = t1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
    uniform: bool,
}

impl Grid {
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidArgument("a grid needs at least 2 nodes".into()));
        }
        for w in nodes.windows(2) {
            if !(w[0] < w[1]) || !w[0].is_finite() || !w[1].is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "grid nodes must be finite and strictly increasing ({} then {})",
                    w[0], w[1]
                )));
            }
        }
        let n = nodes.len() - 1;
        let h = (nodes[n] - nodes[0]) / n as f64;
        let uniform = nodes
            .windows(2)
            .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-12 * h);
        Ok(Self { nodes, uniform })
    }

    /// `n` equal cells on `[t0, t1]`.
    pub fn uniform(t0: f64, t1: f64, n: usize) -> Result<Self> {
        make_grid(t0, t1, n, 1.0, Anchor::None)
    }

    /// Grid on `[t0, t1]` with an interior node at `point`, graded toward it
    /// from both sides: `n_left` cells on `[t0, point]`, `n_right` on
    /// `[point, t1]`. A side with zero cells requires `point` to be that end.
    pub fn graded_at(t0: f64, t1: f64, point: f64, n_left: usize, n_right: usize, grading: f64) -> Result<Self> {
        if !(t0 <= point && point <= t1) {
            return Err(Error::InvalidArgument(format!("point {point} outside [{t0}, {t1}]")));
        }
        let mut nodes = Vec::with_capacity(n_left + n_right + 1);
        if n_left > 0 {
            nodes.extend_from_slice(make_grid(t0, point, n_left, grading, Anchor::Right)?.nodes());
        } else if point != t0 {
            return Err(Error::InvalidArgument("left side needs cells".into()));
        } else {
            nodes.push(t0);
        }
        if n_right > 0 {
            let right = make_grid(point, t1, n_right, grading, Anchor::Left)?;
            nodes.extend_from_slice(&right.nodes()[1..]);
        } else if point != t1 {
            return Err(Error::InvalidArgument("right side needs cells".into()));
        }
        Grid::from_nodes(nodes)
    }

    /// Subdivide every cell into `m` sub-cells graded toward its left end.
    pub fn refine_cells(&self, m: usize, grading: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidArgument("refinement factor must be positive".into()));
        }
        let mut nodes = Vec::with_capacity(self.cells() * m + 1);
        nodes.push(self.t0());
        for w in self.nodes.windows(2) {
            let sub = make_grid(w[0], w[1], m, grading, Anchor::Left)?;
            nodes.extend_from_slice(&sub.nodes()[1..]);
        }
        Grid::from_nodes(nodes)
    }

    /// Mirror image under `t ↦ t0 + t1 − t`.
    pub fn reflect(&self) -> Self {
        let (t0, t1) = (self.t0(), self.t1());
        let mut nodes: Vec<f64> = self.nodes.iter().rev().map(|&t| t0 + t1 - t).collect();
        let last = nodes.len() - 1;
        nodes[0] = t0;
        nodes[last] = t1;
        Self { nodes, uniform: self.uniform }
    }

    pub fn t0(&self) -> f64 {
        self.nodes[0]
    }

    pub fn t1(&self) -> f64 {
        self.nodes[self.nodes.len() - 1]
    }

    pub fn length(&self) -> f64 {
        self.t1() - self.t0()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn cells(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn width(&self, cell: usize) -> f64 {
        self.nodes[cell + 1] - self.nodes[cell]
    }

    pub fn midpoint(&self, cell: usize) -> f64 {
        0.5 * (self.nodes[cell] + self.nodes[cell + 1])
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// Index of the node equal to `t`, if any.
    pub fn node_index(&self, t: f64) -> Option<usize> {
        self.nodes
            .binary_search_by(|x| x.partial_cmp(&t).unwrap_or(std::cmp::Ordering::Less))
            .ok()
    }

    /// Index of the cell containing `t` (right-closed on the last cell).
    pub fn cell_of(&self, t: f64) -> Option<usize> {
        if !(t >= self.t0() && t <= self.t1()) {
            return None;
        }
        let idx = self.nodes.partition_point(|&x| x <= t);
        Some(idx.saturating_sub(1).min(self.cells() - 1))
    }
}

/// Nodes `τ_i = t0 + (t1 − t0)(i/n)^grading` for a left anchor, mirrored for
/// a right anchor, uniform for [`Anchor::None`] or `grading == 1`.
pub fn make_grid(t0: f64, t1: f64, n: usize, grading: f64, anchor: Anchor) -> Result<Grid> {
    if !(t0 < t1) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::InvalidArgument(format!("need finite t0 < t1, got [{t0}, {t1}]")));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("a grid needs at least one cell".into()));
    }
    if !(grading >= 1.0) || !grading.is_finite() {
        return Err(Error::InvalidArgument(format!("grading {grading} must be >= 1")));
    }
    let len = t1 - t0;
    let nf = n as f64;
    let uniform = grading == 1.0 || anchor == Anchor::None;
    let mut nodes: Vec<f64> = (0..=n)
        .map(|i| {
            let x = i as f64 / nf;
            if uniform {
                t0 + len * x
            } else {
                match anchor {
                    Anchor::Left => t0 + len * x.powf(grading),
                    Anchor::Right => t1 - len * (1.0 - x).powf(grading),
                    Anchor::None => unreachable!(),
                }
            }
        })
        .collect();
    nodes[0] = t0;
    nodes[n] = t1;
    let mut g = Grid::from_nodes(nodes)?;
    if uniform {
        g.uniform = true;
    }
    Ok(g)
}

use serde::{Deserialize, Serialize};

use super::profile::{pieces_into, Piece};
use super::{Extremizer, NormResult};
use crate::error::{Error, Result};
use crate::funcspace::{GridFunction, Reconstruction};
use crate::par::{first_argmax, map_slice, Execution};
use crate::rng::SplitMix64;
use crate::specfun::ExtendedReal;

/// Largest cell count the exhaustive strategy accepts.
pub const EXHAUSTIVE_MAX_CELLS: usize = 512;

/// Family of node-to-node intervals over which the BMO sup is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BmoStrategy {
    /// Every pair of nodes.
    Exhaustive,
    /// Lengths of 2^k cells at offsets of half a length, plus right-aligned
    /// and whole-interval windows.
    DyadicSliding,
    /// `count` node pairs drawn from a SplitMix64 stream.
    Sampled { count: usize, seed: u64 },
    /// Exhaustive up to 512 cells, dyadic-sliding beyond.
    Auto,
}

impl BmoStrategy {
    fn resolve(self, cells: usize) -> Self {
        match self {
            BmoStrategy::Auto if cells <= EXHAUSTIVE_MAX_CELLS => BmoStrategy::Exhaustive,
            BmoStrategy::Auto => BmoStrategy::DyadicSliding,
            s => s,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BmoStrategy::Exhaustive => "exhaustive",
            BmoStrategy::DyadicSliding => "dyadic-sliding",
            BmoStrategy::Sampled { .. } => "sampled",
            BmoStrategy::Auto => "auto",
        }
    }
}

/// Node-index pairs `(i, k)`, `i < k`, in scan order.
pub fn bmo_intervals(cells: usize, strategy: BmoStrategy) -> Result<Vec<(usize, usize)>> {
    let n = cells;
    let mut out = Vec::new();
    match strategy.resolve(n) {
        BmoStrategy::Exhaustive => {
            if n > EXHAUSTIVE_MAX_CELLS {
                return Err(Error::TooManyCells(n));
            }
            for i in 0..n {
                for k in i + 1..=n {
                    out.push((i, k));
                }
            }
        }
        BmoStrategy::DyadicSliding => {
            let mut len = 1;
            while len <= n {
                let step = (len / 2).max(1);
                let mut start = 0;
                while start + len <= n {
                    out.push((start, start + len));
                    start += step;
                }
                if (n - len) % step != 0 {
                    out.push((n - len, n));
                }
                len *= 2;
            }
            if !n.is_power_of_two() {
                out.push((0, n));
            }
        }
        BmoStrategy::Sampled { count, seed } => {
            let mut rng = SplitMix64::new(seed);
            for _ in 0..count {
                let a = rng.range_inclusive(0, n as u64) as usize;
                let mut b = rng.range_inclusive(0, n as u64 - 1) as usize;
                if b >= a {
                    b += 1;
                }
                out.push((a.min(b), a.max(b)));
            }
        }
        BmoStrategy::Auto => unreachable!(),
    }
    Ok(out)
}

fn node_pair(f: &GridFunction, a: f64, b: f64) -> Result<(usize, usize)> {
    let g = f.grid();
    let i = g.node_index(a).ok_or(Error::NotANode(a))?;
    let k = g.node_index(b).ok_or(Error::NotANode(b))?;
    if i >= k {
        return Err(Error::InvalidArgument(format!("need a < b, got [{a}, {b}]")));
    }
    Ok((i, k))
}

/// Per-component prefix integrals over cells.
struct Prefix {
    d: usize,
    sums: Vec<f64>,
}

impl Prefix {
    fn new(f: &GridFunction) -> Self {
        let d = f.dim();
        let n = f.grid().cells();
        let mut sums = vec![0.0; (n + 1) * d];
        let mut cell = vec![0.0; d];
        for j in 0..n {
            f.cell_integral(j, &mut cell);
            for k in 0..d {
                sums[(j + 1) * d + k] = sums[j * d + k] + cell[k];
            }
        }
        Self { d, sums }
    }

    fn avg(&self, f: &GridFunction, i: usize, k: usize) -> Vec<f64> {
        let nodes = f.grid().nodes();
        let len = nodes[k] - nodes[i];
        (0..self.d).map(|c| (self.sums[k * self.d + c] - self.sums[i * self.d + c]) / len).collect()
    }
}

/// `(1/(b−a)) ∫_a^b f`, for grid nodes `a < b`.
pub fn avg(f: &GridFunction, a: f64, b: f64) -> Result<Vec<f64>> {
    let (i, k) = node_pair(f, a, b)?;
    Ok(Prefix::new(f).avg(f, i, k))
}

/// Whether every sample touching cells `[i, k)` is the same vector.
fn is_flat(f: &GridFunction, i: usize, k: usize) -> bool {
    let last = match f.mode() {
        Reconstruction::NodalLinear => k,
        Reconstruction::CellConstant => k - 1,
    };
    let first = f.sample(i);
    (i + 1..=last).all(|s| f.sample(s) == first)
}

fn oscillation_between(f: &GridFunction, prefix: &Prefix, i: usize, k: usize, scratch: &mut Vec<Piece>) -> f64 {
    if is_flat(f, i, k) {
        return 0.0;
    }
    let c = prefix.avg(f, i, k);
    let nodes = f.grid().nodes();
    let len = nodes[k] - nodes[i];
    if f.dim() == 1 {
        let c = c[0];
        let v = f.values();
        let mut total = 0.0;
        match f.mode() {
            Reconstruction::CellConstant => {
                for j in i..k {
                    total += (nodes[j + 1] - nodes[j]) * (v[j] - c).abs();
                }
            }
            Reconstruction::NodalLinear => {
                for j in i..k {
                    let (x, y) = (v[j] - c, v[j + 1] - c);
                    let h = nodes[j + 1] - nodes[j];
                    total += if x * y >= 0.0 {
                        0.5 * h * (x + y).abs()
                    } else {
                        0.5 * h * (x * x + y * y) / (x.abs() + y.abs())
                    };
                }
            }
        }
        return total / len;
    }
    scratch.clear();
    pieces_into(f, i, k, Some(&c), scratch);
    scratch.iter().map(Piece::integral).sum::<f64>() / len
}

/// `(1/(b−a)) ∫_a^b ‖f − avg_{[a,b]} f‖`, for grid nodes `a < b`.
pub fn mean_oscillation(f: &GridFunction, a: f64, b: f64) -> Result<f64> {
    let (i, k) = node_pair(f, a, b)?;
    Ok(oscillation_between(f, &Prefix::new(f), i, k, &mut Vec::new()))
}

/// Sup of the mean oscillation over the strategy's intervals: a lower
/// bound for the BMO seminorm.
pub fn bmo_seminorm(f: &GridFunction, strategy: BmoStrategy) -> Result<NormResult> {
    bmo_seminorm_with(f, strategy, Execution::default())
}

pub fn bmo_seminorm_with(f: &GridFunction, strategy: BmoStrategy, exec: Execution) -> Result<NormResult> {
    let cells = f.grid().cells();
    let resolved = strategy.resolve(cells);
    let intervals = bmo_intervals(cells, resolved)?;
    let prefix = Prefix::new(f);
    let values = map_slice(exec, &intervals, |&(i, k)| oscillation_between(f, &prefix, i, k, &mut Vec::new()));
    let mut out = NormResult::new("bmo", &[], resolved.name());
    if let BmoStrategy::Sampled { count, seed } = resolved {
        out.params.insert("count".into(), count as f64);
        out.params.insert("seed".into(), seed as f64);
    }
    out.evals = intervals.len() as u64;
    if let Some(best) = first_argmax(&values) {
        let nodes = f.grid().nodes();
        let (i, k) = intervals[best];
        out.value = ExtendedReal::finite(values[best]);
        out.extremizer = Some(Extremizer::Interval { a: nodes[i], b: nodes[k] });
    }
    Ok(out)
}

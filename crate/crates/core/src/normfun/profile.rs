//! The magnitude `t ↦ ‖f(t) − c‖` of a reconstruction, cut into pieces on
//! which it has a simple closed form.

use crate::funcspace::{GridFunction, Reconstruction, VectorNorm};

/// Magnitude over a sub-interval of length `len`, parametrised by u ∈ [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Piece {
    /// Linear from `v0` to `v1`, both ≥ 0.
    Linear { len: f64, v0: f64, v1: f64 },
    /// `sqrt(q0 + q1 u + q2 u²)`, monotone on the piece.
    Root { len: f64, q0: f64, q1: f64, q2: f64 },
}

// 4-point Gauss-Legendre on [0, 1].
const GAUSS_U: [f64; 4] = [
    0.069_431_844_202_973_71,
    0.330_009_478_207_571_9,
    0.669_990_521_792_428_1,
    0.930_568_155_797_026_3,
];
const GAUSS_W: [f64; 4] = [
    0.173_927_422_568_726_9,
    0.326_072_577_431_273_1,
    0.326_072_577_431_273_1,
    0.173_927_422_568_726_9,
];

impl Piece {
    pub fn len(&self) -> f64 {
        match *self {
            Piece::Linear { len, .. } | Piece::Root { len, .. } => len,
        }
    }

    pub fn at(&self, u: f64) -> f64 {
        match *self {
            Piece::Linear { v0, v1, .. } => v0 + u * (v1 - v0),
            Piece::Root { q0, q1, q2, .. } => (q0 + u * (q1 + u * q2)).max(0.0).sqrt(),
        }
    }

    /// Smallest and largest value on the piece.
    pub fn range(&self) -> (f64, f64) {
        let (a, b) = (self.at(0.0), self.at(1.0));
        (a.min(b), a.max(b))
    }

    /// `∫ magnitude`.
    pub fn integral(&self) -> f64 {
        match *self {
            Piece::Linear { len, v0, v1 } => 0.5 * len * (v0 + v1),
            Piece::Root { len, .. } => len * GAUSS_U.iter().zip(GAUSS_W).map(|(&u, w)| w * self.at(u)).sum::<f64>(),
        }
    }

    /// `ln ∫ magnitude^p` (−∞ for a zero piece), without overflow.
    pub fn ln_power_integral(&self, p: f64) -> f64 {
        match *self {
            Piece::Linear { len, v0, v1 } => {
                let hi = v0.max(v1);
                if hi <= 0.0 || len <= 0.0 {
                    return f64::NEG_INFINITY;
                }
                let lo = v0.min(v1);
                let q = p + 1.0;
                let delta = (hi - lo) / hi;
                // (1 − ρ^q) / (q (1 − ρ)) with ρ = lo/hi = 1 − δ
                let ratio = if q * delta < 1e-4 {
                    1.0 - (q - 1.0) * delta / 2.0 + (q - 1.0) * (q - 2.0) * delta * delta / 6.0
                } else if lo <= 0.0 {
                    1.0 / q
                } else {
                    -(q * (lo / hi).ln()).exp_m1() / (q * delta)
                };
                len.ln() + p * hi.ln() + ratio.ln()
            }
            Piece::Root { len, .. } => {
                let logs: Vec<f64> = GAUSS_U
                    .iter()
                    .zip(GAUSS_W)
                    .map(|(&u, w)| w.ln() + p * self.at(u).ln())
                    .collect();
                len.ln() + log_sum_exp(&logs)
            }
        }
    }

    /// Measure of `{u : magnitude(u) > λ}` times `len`.
    pub fn measure_above(&self, lambda: f64) -> f64 {
        let (lo, hi) = self.range();
        if lo > lambda {
            return self.len();
        }
        if hi <= lambda {
            return 0.0;
        }
        match *self {
            Piece::Linear { len, v0, v1 } => {
                let u = (lambda - v0) / (v1 - v0);
                if v1 > v0 {
                    len * (1.0 - u)
                } else {
                    len * u
                }
            }
            Piece::Root { len, q0, q1, q2 } => {
                // monotone piece: solve q0 + q1 u + q2 u² = λ² for the crossing
                let c = q0 - lambda * lambda;
                let u = solve_unit_quadratic(q2, q1, c);
                if self.at(1.0) > self.at(0.0) {
                    len * (1.0 - u)
                } else {
                    len * u
                }
            }
        }
    }
}

/// Root in [0, 1] of `a u² + b u + c` (a sign change on [0, 1] is assumed).
fn solve_unit_quadratic(a: f64, b: f64, c: f64) -> f64 {
    if a.abs() < 1e-300 {
        return (-c / b).clamp(0.0, 1.0);
    }
    let disc = (b * b - 4.0 * a * c).max(0.0).sqrt();
    let q = -0.5 * (b + b.signum() * disc);
    let r1 = if q != 0.0 { c / q } else { f64::NAN };
    let r2 = q / a;
    let inside = |r: f64| (-1e-12..=1.0 + 1e-12).contains(&r);
    match (inside(r1), inside(r2)) {
        (true, _) => r1.clamp(0.0, 1.0),
        (false, true) => r2.clamp(0.0, 1.0),
        _ => 0.5,
    }
}

pub(crate) fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return m;
    }
    m + logs.iter().map(|l| (l - m).exp()).sum::<f64>().ln()
}

/// Append the pieces of `‖f − shift‖` over cells `[c0, c1)`.
pub(crate) fn pieces_into(f: &GridFunction, c0: usize, c1: usize, shift: Option<&[f64]>, out: &mut Vec<Piece>) {
    let d = f.dim();
    let grid = f.grid();
    let norm = f.vector_norm();
    let mut a = vec![0.0; d];
    let mut b = vec![0.0; d];
    let mut tmp = vec![0.0; d];
    let mut cuts: Vec<f64> = Vec::new();
    for j in c0..c1 {
        let len = grid.width(j);
        let (fa, fb) = f.cell_ends(j);
        for k in 0..d {
            let s = shift.map_or(0.0, |s| s[k]);
            a[k] = fa[k] - s;
            b[k] = fb[k] - s;
        }
        if f.mode() == Reconstruction::CellConstant || a == b {
            let v = norm.of(&a);
            out.push(Piece::Linear { len, v0: v, v1: v });
            continue;
        }
        if d == 1 {
            let (x, y) = (a[0], b[0]);
            if x * y < 0.0 {
                let u = x / (x - y);
                out.push(Piece::Linear { len: len * u, v0: x.abs(), v1: 0.0 });
                out.push(Piece::Linear { len: len * (1.0 - u), v0: 0.0, v1: y.abs() });
            } else {
                out.push(Piece::Linear { len, v0: x.abs(), v1: y.abs() });
            }
            continue;
        }
        match norm {
            VectorNorm::Euclidean => {
                let mut q0 = 0.0;
                let mut q1 = 0.0;
                let mut q2 = 0.0;
                for k in 0..d {
                    let dk = b[k] - a[k];
                    q0 += a[k] * a[k];
                    q1 += 2.0 * a[k] * dk;
                    q2 += dk * dk;
                }
                let ustar = -q1 / (2.0 * q2);
                if ustar > 0.0 && ustar < 1.0 {
                    let m = q0 + ustar * (q1 + ustar * q2);
                    let w = 1.0 - ustar;
                    out.push(Piece::Root { len: len * ustar, q0, q1: q1 * ustar, q2: q2 * ustar * ustar });
                    out.push(Piece::Root { len: len * w, q0: m.max(0.0), q1: (q1 + 2.0 * q2 * ustar) * w, q2: q2 * w * w });
                } else {
                    out.push(Piece::Root { len, q0, q1, q2 });
                }
            }
            VectorNorm::Max | VectorNorm::Abs => {
                cuts.clear();
                let mut push_cut = |x: f64, y: f64| {
                    if x * y < 0.0 {
                        cuts.push(x / (x - y));
                    }
                };
                for k in 0..d {
                    push_cut(a[k], b[k]);
                    if norm == VectorNorm::Max {
                        for l in k + 1..d {
                            push_cut(a[k] - a[l], b[k] - b[l]);
                            push_cut(a[k] + a[l], b[k] + b[l]);
                        }
                    }
                }
                cuts.sort_by(f64::total_cmp);
                cuts.dedup();
                let mut u_prev = 0.0;
                let mut v_prev = norm.of(&a);
                for &u in cuts.iter().chain(std::iter::once(&1.0)) {
                    for k in 0..d {
                        tmp[k] = a[k] + u * (b[k] - a[k]);
                    }
                    let v = if u == 1.0 { norm.of(&b) } else { norm.of(&tmp) };
                    if u > u_prev {
                        out.push(Piece::Linear { len: len * (u - u_prev), v0: v_prev, v1: v });
                    }
                    u_prev = u;
                    v_prev = v;
                }
            }
        }
    }
}

/// Pieces of `‖f‖` over the whole grid.
pub(crate) fn magnitude_pieces(f: &GridFunction) -> Vec<Piece> {
    let mut out = Vec::with_capacity(f.grid().cells() + 8);
    pieces_into(f, 0, f.grid().cells(), None, &mut out);
    out
}

/// Pieces with every `Root` piece replaced by `m` linear interpolants.
pub(crate) fn linearised(pieces: &[Piece], m: usize) -> Vec<Piece> {
    let mut out = Vec::with_capacity(pieces.len());
    for p in pieces {
        match *p {
            Piece::Linear { .. } => out.push(*p),
            Piece::Root { len, .. } => {
                for i in 0..m {
                    let (u0, u1) = (i as f64 / m as f64, (i + 1) as f64 / m as f64);
                    out.push(Piece::Linear { len: len / m as f64, v0: p.at(u0), v1: p.at(u1) });
                }
            }
        }
    }
    out
}

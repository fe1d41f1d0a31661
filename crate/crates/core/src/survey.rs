//! Steepness maxima over a region and the wind-force bounds they imply.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::params::{classify, TractionParams};
use crate::surface::Surface;
use crate::Vec2;

/// Grid resolution used by [`gbar_bound`].
pub const DEFAULT_GRID: usize = 256;

/// Axis-aligned box `[min.0, max.0] × [min.1, max.1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region2 {
    pub min: Vec2,
    pub max: Vec2,
}

impl Region2 {
    pub fn new(x1_min: f64, x2_min: f64, x1_max: f64, x2_max: f64) -> Result<Region2> {
        let ok = [x1_min, x2_min, x1_max, x2_max].iter().all(|v| v.is_finite());
        if !ok || x1_min >= x1_max || x2_min >= x2_max {
            return Err(Error::InvalidArgument(format!(
                "region must be a finite nonempty box, got [{x1_min}, {x1_max}] x [{x2_min}, {x2_max}]"
            )));
        }
        Ok(Region2 { min: [x1_min, x2_min], max: [x1_max, x2_max] })
    }

    pub fn square(half: f64) -> Result<Region2> {
        Region2::new(-half, -half, half, half)
    }

    pub fn clamp(&self, x: Vec2) -> Vec2 {
        [x[0].clamp(self.min[0], self.max[0]), x[1].clamp(self.min[1], self.max[1])]
    }

    /// Grid node `(i, j)` of an `n × n` lattice including the edges.
    pub fn node(&self, n: usize, i: usize, j: usize) -> Vec2 {
        let t = |k: usize, a: f64, b: f64| if k + 1 == n { b } else { a + (b - a) * k as f64 / (n - 1) as f64 };
        [t(i, self.min[0], self.max[0]), t(j, self.min[1], self.max[1])]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Steepness {
    /// `max √(q/(q+1))`, the wind norm per unit `ḡ`.
    pub m: f64,
    pub argmax: Vec2,
}

/// `√(q/(q+1))` at a point.
pub fn steepness(surface: &Surface, x: Vec2) -> Result<f64> {
    let j = surface.jet(x[0], x[1])?;
    let q = j.grad[0] * j.grad[0] + j.grad[1] * j.grad[1];
    Ok((q / (q + 1.0)).sqrt())
}

/// Grid scan followed by a Nelder–Mead polish of the best grid peaks.
pub fn max_steepness(surface: &Surface, region: &Region2, grid_n: usize) -> Result<Steepness> {
    if grid_n < 2 {
        return Err(Error::InvalidArgument(format!("grid must have at least 2 nodes per side, got {grid_n}")));
    }
    let rows: Vec<Vec<f64>> = (0..grid_n)
        .into_par_iter()
        .map(|i| (0..grid_n).map(|j| steepness(surface, region.node(grid_n, i, j))).collect::<Result<Vec<f64>>>())
        .collect::<Result<_>>()?;

    let mut peaks: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..grid_n {
        for j in 0..grid_n {
            let v = rows[i][j];
            let is_peak = (i.saturating_sub(1)..=(i + 1).min(grid_n - 1))
                .all(|a| (j.saturating_sub(1)..=(j + 1).min(grid_n - 1)).all(|b| rows[a][b] <= v));
            if is_peak {
                peaks.push((v, i, j));
            }
        }
    }
    peaks.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    peaks.truncate(8);

    let h = [
        (region.max[0] - region.min[0]) / (grid_n - 1) as f64,
        (region.max[1] - region.min[1]) / (grid_n - 1) as f64,
    ];
    let mut best: Option<Steepness> = None;
    for &(v, i, j) in &peaks {
        let start = region.node(grid_n, i, j);
        let (x, m) = nelder_mead(|x| steepness(surface, region.clamp(x)), start, h, v)?;
        let cand = Steepness { m, argmax: region.clamp(x) };
        if best.is_none_or(|b| cand.m > b.m) {
            best = Some(cand);
        }
    }
    Ok(best.expect("a grid always has a peak"))
}

/// Maximizes `f` from `start` with an initial simplex of size `h`.
fn nelder_mead(f: impl Fn(Vec2) -> Result<f64>, start: Vec2, h: [f64; 2], f_start: f64) -> Result<(Vec2, f64)> {
    let mut s = [
        (start, f_start),
        ([start[0] + h[0], start[1]], 0.0),
        ([start[0], start[1] + h[1]], 0.0),
    ];
    s[1].1 = f(s[1].0)?;
    s[2].1 = f(s[2].0)?;
    let tol = 1e-9 * (1.0 + h[0].max(h[1]));
    for _ in 0..2000 {
        s.sort_by(|a, b| b.1.total_cmp(&a.1));
        let spread = (1..3).map(|k| (s[k].0[0] - s[0].0[0]).hypot(s[k].0[1] - s[0].0[1])).fold(0.0, f64::max);
        if spread < tol {
            break;
        }
        let c = [(s[0].0[0] + s[1].0[0]) / 2.0, (s[0].0[1] + s[1].0[1]) / 2.0];
        let along = |t: f64| [c[0] + t * (s[2].0[0] - c[0]), c[1] + t * (s[2].0[1] - c[1])];
        let r = along(-1.0);
        let fr = f(r)?;
        if fr > s[0].1 {
            let e = along(-2.0);
            let fe = f(e)?;
            s[2] = if fe > fr { (e, fe) } else { (r, fr) };
        } else if fr > s[1].1 {
            s[2] = (r, fr);
        } else {
            let k = if fr > s[2].1 { along(-0.5) } else { along(0.5) };
            let fk = f(k)?;
            if fk > s[2].1.max(fr) {
                s[2] = (k, fk);
            } else {
                for idx in 1..3 {
                    let p = [(s[idx].0[0] + s[0].0[0]) / 2.0, (s[idx].0[1] + s[0].0[1]) / 2.0];
                    s[idx] = (p, f(p)?);
                }
            }
        }
    }
    s.sort_by(|a, b| b.1.total_cmp(&a.1));
    Ok(s[0])
}

/// Supremum of `ḡ` keeping the metric strongly convex when the wind is at most `m·ḡ`.
pub fn gbar_bound_for(m: f64, params: &TractionParams) -> f64 {
    if params.is_riemannian() || m == 0.0 {
        f64::INFINITY
    } else {
        params.wind_bound / m
    }
}

/// `δ = b̃₀/m` over the region, at [`DEFAULT_GRID`] resolution.
pub fn gbar_bound(surface: &Surface, region: &Region2, params: &TractionParams) -> Result<f64> {
    if params.is_riemannian() {
        return Ok(f64::INFINITY);
    }
    Ok(gbar_bound_for(max_steepness(surface, region, DEFAULT_GRID)?.m, params))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSample {
    pub eta: f64,
    pub eta_tilde: f64,
    /// `b̃₀`, possibly infinite.
    pub bound: f64,
    /// `min(b̃₀, ceiling)`.
    pub clamped: f64,
}

/// `b̃₀` on a `grid_n × grid_n` lattice of `[0,1]²`, `η` varying slowest.
pub fn bound_surface(grid_n: usize, ceiling: f64) -> Result<Vec<BoundSample>> {
    if grid_n < 2 {
        return Err(Error::InvalidArgument(format!("grid must have at least 2 nodes per side, got {grid_n}")));
    }
    let unit = Region2 { min: [0.0, 0.0], max: [1.0, 1.0] };
    let mut out = Vec::with_capacity(grid_n * grid_n);
    for i in 0..grid_n {
        for j in 0..grid_n {
            let [eta, eta_tilde] = unit.node(grid_n, i, j);
            let bound = classify(eta, eta_tilde)?.wind_bound;
            out.push(BoundSample { eta, eta_tilde, bound, clamped: bound.min(ceiling) });
        }
    }
    Ok(out)
}

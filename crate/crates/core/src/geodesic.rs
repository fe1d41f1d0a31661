//! Time geodesics: spray coefficients and the ODE `ẍⁱ + 2G̃ⁱ(x, ẋ) = 0`.
//!
//! The production spray uses the scalars restricted to `F̃ = 1`. Because the
//! spray is positively 2-homogeneous in `y`, any velocity is first scaled onto
//! the indicatrix and the result multiplied by `F̃²`, so RK4 stages that leave
//! the indicatrix still see an exact spray.

use std::fmt;

use crate::error::{Error, Result};
use crate::metric::slope_metric;
use crate::params::{wind_decomposition, TractionParams};
use crate::surface::{CurvatureData, PointGeometry, Surface};
use crate::Vec2;

/// Auxiliary scalars of the spray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SprayTerms {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub e: f64,
    pub theta: f64,
    pub psi: f64,
    pub omega: f64,
    pub pi: f64,
    pub r: f64,
}

const DEGENERATE: f64 = 1e-13;

fn nonvanishing(name: &'static str, value: f64, scale: f64) -> Result<()> {
    if value.abs() < DEGENERATE * scale || !value.is_finite() {
        return Err(Error::DegenerateDenominator { name, value });
    }
    Ok(())
}

impl SprayTerms {
    /// Scalars from `α`, `β`, `‖G^T‖_h`, `ḡ` and the metric value `F`.
    /// With `F = 1` these are the indicatrix-restricted forms.
    pub fn from_scalars(
        params: &TractionParams,
        alpha: f64,
        beta: f64,
        wind_norm: f64,
        gbar: f64,
        f: f64,
    ) -> Result<SprayTerms> {
        let (eta, et) = (params.eta, params.eta_tilde);
        let k = 2.0 - eta - et;
        let d = et - eta;
        let d2 = d * d;
        let g2 = wind_norm * wind_norm;
        let gb = gbar * beta;
        let a2 = alpha * alpha;
        let a4 = a2 * a2;
        let a6 = a4 * a2;
        let (f2, f4) = (f * f, f.powi(4));
        let f5 = f4 * f;

        let a_lead = (1.0 - eta) * (1.0 - k * (1.0 - et) * g2) * f2;
        let a = -(a_lead - k * k * gb * f - k * a2) / a2;
        let b_lead = (1.0 - 2.0 * (1.0 - eta) * (1.0 - et) * g2) * f2;
        let b = -(b_lead - 2.0 * k * gb * f - 2.0 * a2) / a2;
        nonvanishing("B", b, (b_lead.abs() + (2.0 * k * gb * f).abs() + 2.0 * a2) / a2)?;
        let c = (a2 * b + gb * a * f) / (alpha * f);
        nonvanishing("C", c, (a2 * b.abs() + (gb * a * f).abs()) / (alpha * f))?;
        let e1 = a6 * b * c * c;
        let e2 = (g2 * a2 - gb * gb) * (a4 * a * a * b + d2 * f4);
        let e = e1 + e2;
        nonvanishing("E", e, e1.abs() + e2.abs())?;

        let lin = (1.0 - et) * a2 * b - d * f2;
        let r = (1.0 - eta) * gbar * gbar / (2.0 * a4 * b) * lin * f2;
        let theta = gbar * alpha / (2.0 * e * f) * (a6 * a * b * b - d2 * gb * f5);
        let psi = gbar * gbar * a2 / (2.0 * e) * (a4 * a * a * b + d2 * f4);
        let omega = (1.0 - eta) * gbar * gbar / (a2 * b * e)
            * (lin * (a6 * b.powi(3) + d2 * g2 * f4 * f2) - d2 * a2 * f5 * (gb * b + g2 * a * f));
        let pi = (1.0 - eta) * gbar.powi(3) / (2.0 * a2 * alpha * b * e)
            * (lin * (2.0 * a6 * a * b * b - d2 * gb * f5)
                + d2 * a2 * b * f4 * (2.0 * a2 + (1.0 - eta) * gb * f))
            * f;
        Ok(SprayTerms { a, b, c, e, theta, psi, omega, pi, r })
    }
}

/// Spray scalars at `(x, y)` given `F = F̃(x, y)`.
pub fn spray_terms(geom: &PointGeometry, y: Vec2, params: &TractionParams, f: f64) -> Result<SprayTerms> {
    params.check_admissible(geom.wind_norm)?;
    let alpha = geom.norm(y);
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument("direction must be a nonzero finite vector".into()));
    }
    if !(f > 0.0 && f.is_finite()) {
        return Err(Error::InvalidArgument(format!("metric value must be positive, got {f}")));
    }
    SprayTerms::from_scalars(params, alpha, geom.beta(y), geom.wind_norm, geom.gbar, f)
}

/// Assembles `Gⁱ` from precomputed scalars. `terms` must belong to this `y`.
pub fn spray_from_terms(geom: &PointGeometry, curv: &CurvatureData, y: Vec2, terms: &SprayTerms) -> Vec2 {
    let alpha = geom.norm(y);
    let a2 = alpha * alpha;
    let r00 = curv.r00_at(y);
    let r0 = curv.r0_at(y);
    let core = r00 + 2.0 * a2 * terms.r * curv.r;
    let cy = (terms.theta * core + alpha * terms.omega * r0) / alpha;
    let cb = (terms.psi * core + alpha * terms.pi * r0) / (geom.q + 1.0);
    let ga = curv.riemannian_spray(y);
    let f = [geom.f1(), geom.f2()];
    [
        ga[0] + cy * y[0] + cb * f[0] - a2 * terms.r * curv.rup[0],
        ga[1] + cy * y[1] + cb * f[1] - a2 * terms.r * curv.rup[1],
    ]
}

/// Spray coefficients `G̃ⁱ(x, y)` for any nonzero `y`.
pub fn spray(geom: &PointGeometry, curv: &CurvatureData, y: Vec2, params: &TractionParams) -> Result<Vec2> {
    let f = slope_metric(geom, y, params)?.f;
    let yh = [y[0] / f, y[1] / f];
    let terms = SprayTerms::from_scalars(params, geom.norm(yh), geom.beta(yh), geom.wind_norm, geom.gbar, 1.0)?;
    let g = spray_from_terms(geom, curv, yh, &terms);
    Ok([g[0] * f * f, g[1] * f * f])
}

/// Resultant velocity `u + G_ηη̃` for heading `θ`; it has unit `F̃`-length.
/// At critical points `θ` is read in the coordinate basis.
pub fn initial_velocity(geom: &PointGeometry, theta: f64, params: &TractionParams) -> Result<Vec2> {
    params.check_admissible(geom.wind_norm)?;
    Ok(wind_decomposition(geom, theta, params).resultant)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicState {
    pub x: Vec2,
    pub y: Vec2,
    pub t: f64,
    /// `F̃(x, y) − 1`.
    pub drift: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub states: Vec<GeodesicState>,
    /// Initial heading, when the path was started from one.
    pub theta0: Option<f64>,
    pub params: TractionParams,
    pub surface: String,
    pub gbar: f64,
}

impl GeodesicPath {
    pub fn points(&self) -> Vec<Vec2> {
        self.states.iter().map(|s| s.x).collect()
    }

    pub fn max_drift(&self) -> f64 {
        self.states.iter().fold(0.0, |m, s| m.max(s.drift.abs()))
    }

    pub fn last(&self) -> &GeodesicState {
        self.states.last().expect("a path holds at least its initial state")
    }

    /// Position at time `t`, by cubic Hermite interpolation between steps.
    pub fn position_at(&self, t: f64) -> Option<Vec2> {
        let s = &self.states;
        if !(t >= s[0].t && t <= self.last().t) {
            return None;
        }
        let i = s.partition_point(|st| st.t < t);
        if i == 0 || s[i].t == t {
            return Some(s[i].x);
        }
        let (p, q) = (&s[i - 1], &s[i]);
        let h = q.t - p.t;
        let u = (t - p.t) / h;
        let (u2, u3) = (u * u, u * u * u);
        let h00 = 2.0 * u3 - 3.0 * u2 + 1.0;
        let h10 = u3 - 2.0 * u2 + u;
        let h01 = -2.0 * u3 + 3.0 * u2;
        let h11 = u3 - u2;
        Some([0, 1].map(|j| h00 * p.x[j] + h10 * h * p.y[j] + h01 * q.x[j] + h11 * h * q.y[j]))
    }
}

/// Integration failure carrying the states accepted before it.
#[derive(Debug, Clone)]
pub struct PathError {
    pub partial: GeodesicPath,
    pub error: Error,
}

impl fmt::Display for PathError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (after t = {})", self.error, self.partial.last().t)
    }
}

impl std::error::Error for PathError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        Some(&self.error)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrateOptions {
    /// Step size; the initial and largest step when adaptive.
    pub dt: f64,
    pub drift_tol: f64,
    /// Project `y ← y/F̃(x, y)` after every step.
    pub renormalize: bool,
    /// Halve or grow the step to keep the per-step drift within budget.
    pub adaptive: bool,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { dt: 1e-3, drift_tol: 1e-6, renormalize: false, adaptive: false }
    }
}

fn accel(surface: &Surface, x: Vec2, y: Vec2, params: &TractionParams, gbar: f64) -> Result<Vec2> {
    let (geom, curv) = surface.local(x, gbar)?;
    let g = spray(&geom, &curv, y, params)?;
    Ok([-2.0 * g[0], -2.0 * g[1]])
}

fn rk4_step(surface: &Surface, x: Vec2, y: Vec2, h: f64, params: &TractionParams, gbar: f64) -> Result<(Vec2, Vec2)> {
    let add = |a: Vec2, b: Vec2, s: f64| [a[0] + s * b[0], a[1] + s * b[1]];
    let k1x = y;
    let k1y = accel(surface, x, y, params, gbar)?;
    let k2x = add(y, k1y, h / 2.0);
    let k2y = accel(surface, add(x, k1x, h / 2.0), k2x, params, gbar)?;
    let k3x = add(y, k2y, h / 2.0);
    let k3y = accel(surface, add(x, k2x, h / 2.0), k3x, params, gbar)?;
    let k4x = add(y, k3y, h);
    let k4y = accel(surface, add(x, k3x, h), k4x, params, gbar)?;
    let comb = |a: Vec2, b: Vec2, c: Vec2, d: Vec2, j: usize| (a[j] + 2.0 * b[j] + 2.0 * c[j] + d[j]) * h / 6.0;
    Ok((
        [x[0] + comb(k1x, k2x, k3x, k4x, 0), x[1] + comb(k1x, k2x, k3x, k4x, 1)],
        [y[0] + comb(k1y, k2y, k3y, k4y, 0), y[1] + comb(k1y, k2y, k3y, k4y, 1)],
    ))
}

fn metric_at(surface: &Surface, x: Vec2, y: Vec2, params: &TractionParams, gbar: f64) -> Result<f64> {
    let (geom, _) = surface.local(x, gbar)?;
    Ok(slope_metric(&geom, y, params)?.f)
}

/// Geodesic from `x0` with heading `θ`, integrated to `t_end` by RK4.
pub fn integrate(
    surface: &Surface,
    x0: Vec2,
    theta: f64,
    params: &TractionParams,
    gbar: f64,
    t_end: f64,
    dt: f64,
) -> std::result::Result<GeodesicPath, PathError> {
    integrate_with(surface, x0, theta, params, gbar, t_end, &IntegrateOptions { dt, ..Default::default() })
}

pub fn integrate_with(
    surface: &Surface,
    x0: Vec2,
    theta: f64,
    params: &TractionParams,
    gbar: f64,
    t_end: f64,
    opts: &IntegrateOptions,
) -> std::result::Result<GeodesicPath, PathError> {
    let empty = || GeodesicPath {
        states: vec![GeodesicState { x: x0, y: [0.0; 2], t: 0.0, drift: 0.0 }],
        theta0: Some(theta),
        params: *params,
        surface: surface.to_string(),
        gbar,
    };
    let y0 = surface
        .local(x0, gbar)
        .and_then(|(geom, _)| initial_velocity(&geom, theta, params))
        .map_err(|error| PathError { partial: empty(), error })?;
    let mut path = integrate_velocity(surface, x0, y0, params, gbar, t_end, opts);
    match &mut path {
        Ok(p) => p.theta0 = Some(theta),
        Err(e) => e.partial.theta0 = Some(theta),
    }
    path
}

/// Geodesic from an arbitrary initial velocity; `y0` is not rescaled.
pub fn integrate_velocity(
    surface: &Surface,
    x0: Vec2,
    y0: Vec2,
    params: &TractionParams,
    gbar: f64,
    t_end: f64,
    opts: &IntegrateOptions,
) -> std::result::Result<GeodesicPath, PathError> {
    let mut path = GeodesicPath {
        states: Vec::new(),
        theta0: None,
        params: *params,
        surface: surface.to_string(),
        gbar,
    };
    let fail = |mut path: GeodesicPath, error: Error| {
        if path.states.is_empty() {
            path.states.push(GeodesicState { x: x0, y: y0, t: 0.0, drift: f64::NAN });
        }
        Err(PathError { partial: path, error })
    };
    if !(t_end > 0.0 && t_end.is_finite()) {
        return fail(path, Error::InvalidArgument(format!("T must be positive, got {t_end}")));
    }
    if !(opts.dt > 0.0 && opts.dt.is_finite()) {
        return fail(path, Error::InvalidArgument(format!("dt must be positive, got {}", opts.dt)));
    }
    let f0 = match metric_at(surface, x0, y0, params, gbar) {
        Ok(f) => f,
        Err(e) => return fail(path, e),
    };
    path.states.push(GeodesicState { x: x0, y: y0, t: 0.0, drift: f0 - 1.0 });

    let steps = (t_end / opts.dt - 1e-9).ceil().max(1.0);
    let fixed_h = t_end / steps;
    let (max_h, min_h) = (opts.dt * 10.0, opts.dt * 1e-4);
    let mut h = if opts.adaptive { opts.dt } else { fixed_h };
    let (mut x, mut y, mut t, mut drift) = (x0, y0, 0.0, f0 - 1.0);
    let mut i = 0usize;
    loop {
        let last = if opts.adaptive { t + h >= t_end * (1.0 - 1e-12) } else { i + 1 == steps as usize };
        let step = if opts.adaptive && last { t_end - t } else { h };
        let (nx, mut ny) = match rk4_step(surface, x, y, step, params, gbar) {
            Ok(v) => v,
            Err(e) => return fail(path, e),
        };
        let f = match metric_at(surface, nx, ny, params, gbar) {
            Ok(f) => f,
            Err(e) => return fail(path, e),
        };
        let new_drift = f - 1.0;
        if opts.adaptive {
            let budget = opts.drift_tol * step / t_end;
            let change = (new_drift - drift).abs();
            if change > budget && step > min_h {
                h = step / 2.0;
                continue;
            }
            if change < 0.1 * budget {
                h = (h * 1.5).min(max_h);
            }
        }
        if !(new_drift.abs() < opts.drift_tol) {
            return fail(path, Error::Drift { t: t + step, drift: new_drift, tol: opts.drift_tol });
        }
        i += 1;
        t = if last { t_end } else if opts.adaptive { t + step } else { i as f64 * fixed_h };
        x = nx;
        if opts.renormalize {
            ny = [ny[0] / f, ny[1] / f];
        }
        y = ny;
        drift = if opts.renormalize { 0.0 } else { new_drift };
        path.states.push(GeodesicState { x, y, t, drift: new_drift });
        if last {
            return Ok(path);
        }
    }
}

/// Travel time of a polyline: `Σ F̃(midpoint, Δx)`.
pub fn path_time(surface: &Surface, points: &[Vec2], params: &TractionParams, gbar: f64) -> Result<f64> {
    let mut total = 0.0;
    for w in points.windows(2) {
        let dx = [w[1][0] - w[0][0], w[1][1] - w[0][1]];
        if dx == [0.0, 0.0] {
            continue;
        }
        let mid = [(w[0][0] + w[1][0]) / 2.0, (w[0][1] + w[1][1]) / 2.0];
        let (geom, _) = surface.local(mid, gbar)?;
        total += slope_metric(&geom, dx, params)?.f;
    }
    Ok(total)
}

//! The `(η, η̃)`-slope metric `F̃`.
//!
//! With `k = 2 − η − η̃` and `G = ‖G^T‖_h`, the metric solves
//!
//! ```text
//! F·√(α² + 2(1−η)ḡβF + (1−η)²G²F²) = α² + kḡβF + (1−η)(1−η̃)G²F²
//! ```
//!
//! Squaring gives a quartic in `F`. Writing `F = α·φ` and `s = β/α` turns it
//! into a quartic in `φ` whose coefficients only involve `G` and `ḡs`.

pub mod quartic;

use crate::error::{Error, Result};
use crate::params::TractionParams;
use crate::surface::PointGeometry;
use crate::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Quartic,
    QuadraticRanders,
    QuadraticMatsumoto,
    Riemannian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricEval {
    pub alpha: f64,
    pub beta: f64,
    pub s: f64,
    pub f: f64,
    /// `|LHS − RHS|` of the irrational equation at the root.
    pub residual: f64,
    pub branch: Branch,
}

impl MetricEval {
    pub fn phi(&self) -> f64 {
        self.f / self.alpha
    }
}

/// Coefficients of the quartic in `φ`, descending.
pub fn phi_quartic(params: &TractionParams, wind_norm: f64, gs: f64) -> quartic::Quartic {
    let (e, t) = (params.eta, params.eta_tilde);
    let k = 2.0 - e - t;
    let g2 = wind_norm * wind_norm;
    [
        (1.0 - e).powi(2) * g2 * (1.0 - (1.0 - t).powi(2) * g2),
        2.0 * (1.0 - e) * (1.0 - k * (1.0 - t) * g2) * gs,
        (1.0 - 2.0 * (1.0 - e) * (1.0 - t) * g2) - k * k * gs * gs,
        -2.0 * k * gs,
        -1.0,
    ]
}

/// Both sides of the irrational equation, divided by `α²`, at `φ = F/α`.
pub fn irrational_sides(params: &TractionParams, wind_norm: f64, gs: f64, phi: f64) -> (f64, f64) {
    let (e, t) = (params.eta, params.eta_tilde);
    let g2 = wind_norm * wind_norm;
    let under = 1.0 + 2.0 * (1.0 - e) * gs * phi + (1.0 - e).powi(2) * g2 * phi * phi;
    let lhs = phi * under.max(0.0).sqrt();
    let rhs = 1.0 + (2.0 - e - t) * gs * phi + (1.0 - e) * (1.0 - t) * g2 * phi * phi;
    (lhs, rhs)
}

/// `φ = F̃/α` as a function of the wind norm `G` and `ḡ·s`.
///
/// No admissibility check; callers that need one use [`slope_metric`].
pub fn phi(params: &TractionParams, wind_norm: f64, gs: f64) -> Result<(f64, Branch)> {
    let (e, t) = (params.eta, params.eta_tilde);
    if params.is_riemannian() || wind_norm == 0.0 {
        return Ok((1.0, Branch::Riemannian));
    }
    if e == t {
        let w = 1.0 - e;
        let lambda = 1.0 - w * w * wind_norm * wind_norm;
        let v = ((lambda + w * w * gs * gs).sqrt() + w * gs) / lambda;
        return Ok((v, Branch::QuadraticRanders));
    }
    if e == 1.0 {
        return Ok((1.0 / (1.0 - (1.0 - t) * gs), Branch::QuadraticMatsumoto));
    }
    let poly = phi_quartic(params, wind_norm, gs);
    let mut found: Vec<f64> = Vec::new();
    for r in quartic::real_roots(&poly) {
        if r <= 0.0 {
            continue;
        }
        let r = quartic::polish(&poly, r, 3);
        let (lhs, rhs) = irrational_sides(params, wind_norm, gs, r);
        let scale = 1.0 + ((2.0 - e - t) * gs * r).abs() + (1.0 - e) * (1.0 - t) * wind_norm * wind_norm * r * r;
        if rhs <= 0.0 || (lhs - rhs).abs() > 1e-8 * scale {
            continue;
        }
        // The self-velocity u behind the root has speed ‖z‖ = 1 + (η−η̃)h(u, G)
        // and must be a unit vector, so |h(u, G)| ≤ G. Squaring also admits
        // roots where z ≈ 0, which fail this.
        let z = lhs / (r * r);
        if ((z - 1.0) / (e - t)).abs() > wind_norm * (1.0 + 1e-6) + 1e-12 {
            continue;
        }
        if !found.iter().any(|f| (f - r).abs() <= 1e-6 * r) {
            found.push(r);
        }
    }
    match found.as_slice() {
        [r] => Ok((*r, Branch::Quartic)),
        _ => Err(Error::RootCount { count: found.len() }),
    }
}

pub fn slope_metric(geom: &PointGeometry, y: Vec2, params: &TractionParams) -> Result<MetricEval> {
    let alpha = geom.norm(y);
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument("direction must be a nonzero finite vector".into()));
    }
    params.check_admissible(geom.wind_norm)?;
    let beta = geom.beta(y);
    let s = beta / alpha;
    let gs = geom.gbar * s;
    let (p, branch) = phi(params, geom.wind_norm, gs)?;
    let (lhs, rhs) = irrational_sides(params, geom.wind_norm, gs, p);
    Ok(MetricEval {
        alpha,
        beta,
        s,
        f: alpha * p,
        residual: (lhs - rhs).abs() * alpha * alpha,
        branch,
    })
}

/// Closed-form metric on the diagonal `η = η̃` (Randers type).
pub fn randers_oracle(geom: &PointGeometry, y: Vec2, eta: f64) -> Result<f64> {
    let w = 1.0 - eta;
    if !(w * geom.wind_norm < 1.0) {
        return Err(Error::Precondition(format!("(1-eta)*|G| = {} is not below 1", w * geom.wind_norm)));
    }
    let lambda = 1.0 - w * w * geom.wind_norm * geom.wind_norm;
    let hyg = w * geom.dot(y, geom.wind);
    let a2 = geom.dot(y, y);
    Ok(((hyg * hyg + lambda * a2).sqrt() - hyg) / lambda)
}

/// Closed-form metric on the edge `η = 1` (Matsumoto type).
pub fn matsumoto_oracle(geom: &PointGeometry, y: Vec2, eta_tilde: f64) -> Result<f64> {
    let w = 1.0 - eta_tilde;
    if !(w * geom.wind_norm <= 0.5) {
        return Err(Error::Precondition(format!("(1-eta~)*|G| = {} exceeds 1/2", w * geom.wind_norm)));
    }
    let a = geom.norm(y);
    Ok(a * a / (a + w * geom.dot(y, geom.wind)))
}

/// Sign test `(1 − (1−η̃)G) / (1 − (η−η̃)G) > 0`.
pub fn navigation_condition(geom: &PointGeometry, params: &TractionParams) -> bool {
    let g = geom.wind_norm;
    let num = 1.0 - (1.0 - params.eta_tilde) * g;
    let den = 1.0 - (params.eta - params.eta_tilde) * g;
    num / den > 0.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndicatrixPoint {
    pub theta: f64,
    /// Coordinates in the downhill/contour frame.
    pub x: f64,
    pub y: f64,
    /// Tangent vector in `(∂1, ∂2)`.
    pub v: Vec2,
}

/// Frame coordinates of the unit-time displacement for heading `θ`.
pub fn indicatrix_xy(params: &TractionParams, wind_norm: f64, theta: f64) -> (f64, f64) {
    let (s, c) = theta.sin_cos();
    let speed = 1.0 + (params.eta - params.eta_tilde) * wind_norm * c;
    (speed * c + (1.0 - params.eta) * wind_norm, speed * s)
}

/// Points of `{F̃ = 1}` for each heading. At critical points the metric is
/// `h` itself and the coordinate unit circle is returned.
pub fn indicatrix(geom: &PointGeometry, params: &TractionParams, thetas: &[f64]) -> Result<Vec<IndicatrixPoint>> {
    params.check_admissible(geom.wind_norm)?;
    Ok(thetas
        .iter()
        .map(|&theta| {
            let (x, y) = indicatrix_xy(params, geom.wind_norm, theta);
            let v = geom.from_frame(x, y).unwrap_or([theta.cos(), theta.sin()]);
            let (x, y) = if geom.frame().is_some() { (x, y) } else { (theta.cos(), theta.sin()) };
            IndicatrixPoint { theta, x, y, v }
        })
        .collect())
}

//! Time fronts from geodesic fans, and the inner/outer envelopes spanned by
//! the four limiting traction cases.

use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geodesic::{integrate_with, GeodesicPath, IntegrateOptions, PathError};
use crate::params::{classify, TractionParams};
use crate::surface::Surface;
use crate::Vec2;

#[derive(Debug, Clone, PartialEq)]
pub struct FrontSample {
    pub theta: f64,
    /// `None` when the ray failed before reaching the front time.
    pub endpoint: Option<Vec2>,
    pub error: Option<Error>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeFront {
    pub center: Vec2,
    pub t: f64,
    /// Ordered by heading in `[0, 2π)`.
    pub samples: Vec<FrontSample>,
    pub params: TractionParams,
    pub gbar: f64,
}

impl TimeFront {
    pub fn endpoints(&self) -> Vec<Vec2> {
        self.samples.iter().filter_map(|s| s.endpoint).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.samples.iter().all(|s| s.endpoint.is_some())
    }

    pub fn first_error(&self) -> Option<&Error> {
        self.samples.iter().find_map(|s| s.error.as_ref())
    }

    pub fn centroid(&self) -> Option<Vec2> {
        let pts = self.endpoints();
        if pts.is_empty() {
            return None;
        }
        let n = pts.len() as f64;
        Some([pts.iter().map(|p| p[0]).sum::<f64>() / n, pts.iter().map(|p| p[1]).sum::<f64>() / n])
    }

    /// Endpoints in polar form `(angle, radius)` about the center, sorted by angle.
    pub fn polar(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = self
            .endpoints()
            .iter()
            .map(|p| {
                let d = [p[0] - self.center[0], p[1] - self.center[1]];
                (d[1].atan2(d[0]).rem_euclid(TAU), d[0].hypot(d[1]))
            })
            .collect();
        out.sort_by(|a, b| a.0.total_cmp(&b.0));
        out
    }

    /// Radius along the polar direction `angle`, linear between neighbours.
    pub fn radius_at(&self, angle: f64) -> Option<f64> {
        radius_at(&self.polar(), angle)
    }
}

fn radius_at(polar: &[(f64, f64)], angle: f64) -> Option<f64> {
    if polar.len() < 2 {
        return None;
    }
    let a = angle.rem_euclid(TAU);
    let n = polar.len();
    let i = polar.partition_point(|p| p.0 <= a);
    let (lo, hi) = if i == 0 {
        ((polar[n - 1].0 - TAU, polar[n - 1].1), polar[0])
    } else if i == n {
        (polar[n - 1], (polar[0].0 + TAU, polar[0].1))
    } else {
        (polar[i - 1], polar[i])
    };
    let span = hi.0 - lo.0;
    if span <= 0.0 {
        return Some(lo.1.max(hi.1));
    }
    let u = ((a - lo.0) / span).clamp(0.0, 1.0);
    Some(lo.1 + u * (hi.1 - lo.1))
}

/// Headings `θ_k = 2πk/n`.
pub fn headings(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

/// One geodesic per heading, integrated in parallel; the result is in heading order.
pub fn geodesic_fan(
    surface: &Surface,
    center: Vec2,
    params: &TractionParams,
    gbar: f64,
    t_end: f64,
    n: usize,
    opts: &IntegrateOptions,
) -> Vec<std::result::Result<GeodesicPath, PathError>> {
    headings(n)
        .into_par_iter()
        .map(|theta| integrate_with(surface, center, theta, params, gbar, t_end, opts))
        .collect()
}

/// Samples a fan at time `t`, which must not exceed the fan's integration time.
pub fn front_from_fan(
    fan: &[std::result::Result<GeodesicPath, PathError>],
    center: Vec2,
    params: &TractionParams,
    gbar: f64,
    t: f64,
) -> TimeFront {
    let samples = headings(fan.len())
        .into_iter()
        .zip(fan)
        .map(|(theta, ray)| {
            let (path, error) = match ray {
                Ok(p) => (p, None),
                Err(e) => (&e.partial, Some(e.error.clone())),
            };
            match path.position_at(t) {
                Some(x) => FrontSample { theta, endpoint: Some(x), error: None },
                None => FrontSample {
                    theta,
                    endpoint: None,
                    error: Some(error.unwrap_or_else(|| Error::InvalidArgument(format!("ray ends before t = {t}")))),
                },
            }
        })
        .collect();
    TimeFront { center, t, samples, params: *params, gbar }
}

fn check_front_args(t: f64, n: usize) -> Result<()> {
    if n < 8 {
        return Err(Error::InvalidArgument(format!("a front needs at least 8 rays, got {n}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("front time must be positive, got {t}")));
    }
    Ok(())
}

/// Front at time `t` from `n` equally spaced headings with default integration options.
pub fn time_front(surface: &Surface, center: Vec2, params: &TractionParams, gbar: f64, t: f64, n: usize) -> Result<TimeFront> {
    time_front_with(surface, center, params, gbar, t, n, &IntegrateOptions::default())
}

pub fn time_front_with(
    surface: &Surface,
    center: Vec2,
    params: &TractionParams,
    gbar: f64,
    t: f64,
    n: usize,
    opts: &IntegrateOptions,
) -> Result<TimeFront> {
    check_front_args(t, n)?;
    let fan = geodesic_fan(surface, center, params, gbar, t, n, opts);
    Ok(front_from_fan(&fan, center, params, gbar, t))
}

/// Fronts of the four limiting cases at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub znp: TimeFront,
    pub riem: TimeFront,
    pub mat: TimeFront,
    pub cross: TimeFront,
}

impl Envelope {
    /// Smaller of the ZNP and RIEM radii along `angle`.
    pub fn inner_radius(&self, angle: f64) -> Option<f64> {
        Some(self.znp.radius_at(angle)?.min(self.riem.radius_at(angle)?))
    }

    /// Larger of the MAT and CROSS radii along `angle`.
    pub fn outer_radius(&self, angle: f64) -> Option<f64> {
        Some(self.mat.radius_at(angle)?.max(self.cross.radius_at(angle)?))
    }

    pub fn fronts(&self) -> [(&'static str, &TimeFront); 4] {
        [("ZNP", &self.znp), ("RIEM", &self.riem), ("MAT", &self.mat), ("CROSS", &self.cross)]
    }
}

pub fn envelope_bounds(surface: &Surface, center: Vec2, gbar: f64, t: f64, n: usize) -> Result<Envelope> {
    envelope_bounds_with(surface, center, gbar, t, n, &IntegrateOptions::default())
}

pub fn envelope_bounds_with(
    surface: &Surface,
    center: Vec2,
    gbar: f64,
    t: f64,
    n: usize,
    opts: &IntegrateOptions,
) -> Result<Envelope> {
    check_front_args(t, n)?;
    let front = |e: f64, et: f64| -> Result<TimeFront> {
        let f = time_front_with(surface, center, &classify(e, et)?, gbar, t, n, opts)?;
        match f.first_error() {
            Some(err) => Err(err.clone()),
            None => Ok(f),
        }
    };
    Ok(Envelope { mat: front(1.0, 0.0)?, cross: front(0.0, 1.0)?, znp: front(0.0, 0.0)?, riem: front(1.0, 1.0)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geodesic::{initial_velocity, spray};
    use crate::surface::point_geometry;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn dist(a: Vec2, b: Vec2) -> f64 {
        (a[0] - b[0]).hypot(a[1] - b[1])
    }

    #[test]
    fn radius_interpolation_wraps_around() {
        let polar = vec![(0.1, 1.0), (3.0, 2.0), (6.0, 3.0)];
        assert_eq!(radius_at(&polar, 0.1), Some(1.0));
        assert!((radius_at(&polar, 1.55).unwrap() - 1.5).abs() < 1e-12);
        let span = 0.1 + TAU - 6.0;
        let want = 3.0 + (0.05 + TAU - 6.0) / span * (1.0 - 3.0);
        assert!((radius_at(&polar, 0.05).unwrap() - want).abs() < 1e-12);
        let want = 3.0 + 0.2 / span * (1.0 - 3.0);
        assert!((radius_at(&polar, 6.2).unwrap() - want).abs() < 1e-12);
        assert_eq!(radius_at(&polar[..1], 0.0), None);
    }

    #[test]
    fn circle_front_has_constant_radius() {
        let p = classify(1.0, 1.0).unwrap();
        let f = time_front(&Surface::Incline(0.0), [1.0, 2.0], &p, 0.0, 1.0, 64).unwrap();
        for k in 0..100 {
            let r = f.radius_at(k as f64 * 0.0731).unwrap();
            assert!((r - 1.0).abs() < 2e-3);
        }
    }

    #[test]
    fn incline_front_is_translated_indicatrix() {
        let s = Surface::Incline(0.5);
        let p = classify(0.7, 0.8).unwrap();
        let center = [0.4, -1.0];
        let f = time_front(&s, center, &p, 1.0, 1.0, 64).unwrap();
        let geom = point_geometry(&s, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(f.samples.len(), 64);
        for smp in &f.samples {
            let y = initial_velocity(&geom, smp.theta, &p).unwrap();
            assert!(dist(smp.endpoint.unwrap(), [center[0] + y[0], center[1] + y[1]]) < 1e-10);
        }
    }

    #[test]
    fn zero_wind_fronts_coincide() {
        let env = envelope_bounds(&Surface::Gauss3, [0.2, 0.1], 0.0, 0.5, 16).unwrap();
        for (_, f) in env.fronts() {
            for (a, b) in f.samples.iter().zip(&env.riem.samples) {
                assert!(dist(a.endpoint.unwrap(), b.endpoint.unwrap()) < 1e-12);
            }
        }
    }

    #[test]
    fn diagonal_front_equals_scaled_znp_front() {
        let mut rng = StdRng::seed_from_u64(21);
        for _ in 0..3 {
            let eta: f64 = rng.gen_range(0.1..0.9);
            let gbar = 0.76;
            let a = time_front(&Surface::Gauss3, [0.0, 0.0], &classify(eta, eta).unwrap(), gbar, 1.0, 16).unwrap();
            let b = time_front(&Surface::Gauss3, [0.0, 0.0], &classify(0.0, 0.0).unwrap(), (1.0 - eta) * gbar, 1.0, 16)
                .unwrap();
            for (x, y) in a.samples.iter().zip(&b.samples) {
                assert!(dist(x.endpoint.unwrap(), y.endpoint.unwrap()) < 1e-8);
            }
        }
    }

    #[test]
    fn short_time_front_follows_initial_velocity() {
        let p = classify(0.7, 0.8).unwrap();
        let center = [0.3, 0.6];
        let (geom, curv) = Surface::Gauss3.local(center, 0.76).unwrap();
        for t in [1e-3, 2e-3] {
            let opts = IntegrateOptions { dt: t / 20.0, ..Default::default() };
            let f = time_front_with(&Surface::Gauss3, center, &p, 0.76, t, 16, &opts).unwrap();
            for s in &f.samples {
                let y = initial_velocity(&geom, s.theta, &p).unwrap();
                let e = s.endpoint.unwrap();
                let err = dist(e, [center[0] + t * y[0], center[1] + t * y[1]]);
                // second-order term is −t²·G(x0, y0)
                let g = spray(&geom, &curv, y, &p).unwrap();
                let c = err / (t * t);
                assert!((c - g[0].hypot(g[1])).abs() < 0.01 * (1.0 + c), "{c} vs {g:?}");
            }
        }
    }

    #[test]
    fn stronger_wind_shifts_front_downhill() {
        let p = classify(0.7, 0.8).unwrap();
        let center = [1.0, 0.0];
        let geom = point_geometry(&Surface::Gauss3, 1.0, 0.0, 1.0).unwrap();
        let down = [-geom.f1(), -geom.f2()];
        let mut last = f64::NEG_INFINITY;
        for gbar in [0.76, 3.0, 5.0, 7.65] {
            let f = time_front(&Surface::Gauss3, center, &p, gbar, 1.0, 32).unwrap();
            assert!(f.is_complete(), "gbar {gbar}: {:?}", f.first_error());
            let c = f.centroid().unwrap();
            let shift = (c[0] - center[0]) * down[0] + (c[1] - center[1]) * down[1];
            assert!(shift > last, "gbar {gbar}");
            last = shift;
        }
    }

    #[test]
    fn envelope_rejects_strong_wind() {
        let err = envelope_bounds(&Surface::Incline(0.5), [0.0, 0.0], 0.6 * 5f64.sqrt(), 1.0, 16).unwrap_err();
        assert!(matches!(err, Error::ConvexityViolation { .. }));
    }

    #[test]
    fn rays_failing_midway_are_flagged() {
        let s = Surface::from_formula("x1^3/3").unwrap();
        let p = classify(1.0, 0.0).unwrap();
        let f = time_front_with(&s, [0.0, 0.0], &p, 1.0, 8.0, 8, &IntegrateOptions { dt: 1e-2, ..Default::default() })
            .unwrap();
        assert!(!f.is_complete());
        assert!(f.samples.iter().any(|s| s.endpoint.is_some()));
        assert!(matches!(f.first_error(), Some(Error::ConvexityViolation { .. })));
    }

    #[test]
    fn too_few_rays_is_an_error() {
        let p = classify(0.7, 0.8).unwrap();
        assert!(time_front(&Surface::Gauss3, [0.0; 2], &p, 0.76, 1.0, 4).is_err());
    }
}

//! Height-function surfaces, their induced metric `h`, the gravitational wind
//! and the curvature scalars entering the geodesic equation.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expr::{self, Expr, Jet2};
use crate::Vec2;

/// A surface `z = f(x1, x2)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Surface {
    /// Parsed formula.
    Expr { source: String, expr: Expr },
    /// The plane `z = a·x1`.
    Incline(f64),
    /// Three Gaussian bumps of heights 1/2, 3/4, 1 centred at (1,−1), (−1,−1), (0,1).
    Gauss3,
}

/// Formula of [`Surface::Gauss3`] in the expression grammar.
pub const GAUSS3_FORMULA: &str = "0.5*exp(-((x1-1)^2+(x2+1)^2)) + 0.75*exp(-((x1+1)^2+(x2+1)^2)) + exp(-(x1^2+(x2-1)^2))";

impl Surface {
    pub fn from_formula(source: &str) -> Result<Surface> {
        Ok(Surface::Expr { source: source.to_string(), expr: expr::parse(source)? })
    }

    pub fn height(&self, x1: f64, x2: f64) -> Result<f64> {
        match self {
            Surface::Expr { expr, .. } => expr.eval(x1, x2),
            Surface::Incline(a) => Ok(a * x1),
            Surface::Gauss3 => {
                let [e1, e2, e3] = gauss3_exps(x1, x2);
                Ok(0.5 * e1 + 0.75 * e2 + e3)
            }
        }
    }

    pub fn jet(&self, x1: f64, x2: f64) -> Result<Jet2> {
        match self {
            Surface::Expr { expr, .. } => expr.eval_jet2(x1, x2),
            Surface::Incline(a) => Ok(Jet2 { value: a * x1, grad: [*a, 0.0], hess: [0.0; 3] }),
            Surface::Gauss3 => Ok(gauss3_jet(x1, x2)),
        }
    }

    /// Geometry and curvature at a point from a single jet evaluation.
    pub fn local(&self, x: Vec2, gbar: f64) -> Result<(PointGeometry, CurvatureData)> {
        check_gbar(gbar)?;
        let jet = self.jet(x[0], x[1])?;
        Ok((PointGeometry::from_jet(x, jet, gbar), CurvatureData::from_jet(&jet)))
    }
}

fn gauss3_exps(x1: f64, x2: f64) -> [f64; 3] {
    let r1 = (x1 - 1.0).powi(2) + (x2 + 1.0).powi(2);
    let r2 = (x1 + 1.0).powi(2) + (x2 + 1.0).powi(2);
    let r3 = x1 * x1 + (x2 - 1.0).powi(2);
    [(-r1).exp(), (-r2).exp(), (-r3).exp()]
}

fn gauss3_jet(x1: f64, x2: f64) -> Jet2 {
    let [e1, e2, e3] = gauss3_exps(x1, x2);
    let (a1, b1) = (x1 - 1.0, x2 + 1.0);
    let (a2, b2) = (x1 + 1.0, x2 + 1.0);
    let (a3, b3) = (x1, x2 - 1.0);
    Jet2 {
        value: 0.5 * e1 + 0.75 * e2 + e3,
        grad: [-a1 * e1 - 1.5 * a2 * e2 - 2.0 * a3 * e3, -b1 * e1 - 1.5 * b2 * e2 - 2.0 * b3 * e3],
        hess: [
            (2.0 * a1 * a1 - 1.0) * e1
                + 1.5 * (2.0 * a2 * a2 - 1.0) * e2
                + 2.0 * (2.0 * a3 * a3 - 1.0) * e3,
            2.0 * a1 * b1 * e1 + 3.0 * a2 * b2 * e2 + 4.0 * a3 * b3 * e3,
            (2.0 * b1 * b1 - 1.0) * e1
                + 1.5 * (2.0 * b2 * b2 - 1.0) * e2
                + 2.0 * (2.0 * b3 * b3 - 1.0) * e3,
        ],
    }
}

impl FromStr for Surface {
    type Err = Error;

    /// Accepts `expr:<formula>`, `incline:<a>` or `gauss3`.
    fn from_str(s: &str) -> Result<Surface> {
        let s = s.trim();
        if s == "gauss3" {
            return Ok(Surface::Gauss3);
        }
        if let Some(a) = s.strip_prefix("incline:") {
            let a: f64 = a.trim().parse().map_err(|_| Error::SurfaceSpec(s.to_string()))?;
            if !a.is_finite() {
                return Err(Error::SurfaceSpec(s.to_string()));
            }
            return Ok(Surface::Incline(a));
        }
        if let Some(src) = s.strip_prefix("expr:") {
            return Surface::from_formula(src);
        }
        Err(Error::SurfaceSpec(s.to_string()))
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Surface::Expr { source, .. } => write!(f, "expr:{source}"),
            Surface::Incline(a) => write!(f, "incline:{a}"),
            Surface::Gauss3 => f.write_str("gauss3"),
        }
    }
}

/// Riemannian metric and gravitational wind at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointGeometry {
    pub x: Vec2,
    pub jet: Jet2,
    /// `f1² + f2²`.
    pub q: f64,
    pub h: [[f64; 2]; 2],
    /// Components `wⁱ` of the wind in `(∂1, ∂2)`.
    pub wind: Vec2,
    /// `‖G^T‖_h = ḡ·√(q/(q+1))`.
    pub wind_norm: f64,
    pub gbar: f64,
}

/// Orthonormal frame: `e1` points straight downhill, `e2` along the contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub e1: Vec2,
    pub e2: Vec2,
}

impl PointGeometry {
    pub fn from_jet(x: Vec2, jet: Jet2, gbar: f64) -> Self {
        let [f1, f2] = jet.grad;
        let q = f1 * f1 + f2 * f2;
        let k = -gbar / (q + 1.0);
        Self {
            x,
            jet,
            q,
            h: [[1.0 + f1 * f1, f1 * f2], [f1 * f2, 1.0 + f2 * f2]],
            wind: [k * f1, k * f2],
            wind_norm: gbar * (q / (q + 1.0)).sqrt(),
            gbar,
        }
    }

    pub fn f1(&self) -> f64 {
        self.jet.grad[0]
    }

    pub fn f2(&self) -> f64 {
        self.jet.grad[1]
    }

    pub fn dot(&self, u: Vec2, v: Vec2) -> f64 {
        let h = &self.h;
        h[0][0] * u[0] * v[0] + h[0][1] * (u[0] * v[1] + u[1] * v[0]) + h[1][1] * u[1] * v[1]
    }

    pub fn norm(&self, u: Vec2) -> f64 {
        self.dot(u, u).sqrt()
    }

    /// `h^{-1}`.
    pub fn h_inv(&self) -> [[f64; 2]; 2] {
        let [f1, f2] = self.jet.grad;
        let d = 1.0 + self.q;
        [[(1.0 + f2 * f2) / d, -f1 * f2 / d], [-f1 * f2 / d, (1.0 + f1 * f1) / d]]
    }

    /// `β = f1·y¹ + f2·y²`.
    pub fn beta(&self, y: Vec2) -> f64 {
        self.f1() * y[0] + self.f2() * y[1]
    }

    /// `None` at critical points.
    pub fn frame(&self) -> Option<Frame> {
        let q = self.q;
        if q == 0.0 {
            return None;
        }
        let [f1, f2] = self.jet.grad;
        let a = (q * (q + 1.0)).sqrt();
        let b = q.sqrt();
        Some(Frame { e1: [-f1 / a, -f2 / a], e2: [f2 / b, -f1 / b] })
    }

    /// Frame coordinates `(X, Y)` of a tangent vector.
    pub fn to_frame(&self, y: Vec2) -> Option<(f64, f64)> {
        let fr = self.frame()?;
        Some((self.dot(y, fr.e1), self.dot(y, fr.e2)))
    }

    /// Tangent vector with frame coordinates `(X, Y)`.
    pub fn from_frame(&self, x: f64, y: f64) -> Option<Vec2> {
        let fr = self.frame()?;
        Some([x * fr.e1[0] + y * fr.e2[0], x * fr.e1[1] + y * fr.e2[1]])
    }
}

/// The `r`-quantities of the closed 1-form `β = df`. All are independent of `ḡ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureData {
    /// Quadratic form with `r00 = r_ij yⁱ yʲ`.
    pub r00: [[f64; 2]; 2],
    /// Covector with `r0 = r_i yⁱ`.
    pub r0: Vec2,
    pub r: f64,
    pub rup: Vec2,
    /// Gradient of `f`, kept for the Riemannian spray.
    grad: Vec2,
}

impl CurvatureData {
    pub fn from_jet(jet: &Jet2) -> Self {
        let [f1, f2] = jet.grad;
        let [f11, f12, f22] = jet.hess;
        let d = 1.0 + f1 * f1 + f2 * f2;
        let c1 = f1 * f11 + f2 * f12;
        let c2 = f1 * f12 + f2 * f22;
        let d2 = d * d;
        let d3 = d2 * d;
        Self {
            r00: [[f11 / d, f12 / d], [f12 / d, f22 / d]],
            r0: [c1 / d2, c2 / d2],
            r: (f1 * f1 * f11 + 2.0 * f1 * f2 * f12 + f2 * f2 * f22) / d3,
            rup: [((1.0 + f2 * f2) * c1 - f1 * f2 * c2) / d3, (-f1 * f2 * c1 + (1.0 + f1 * f1) * c2) / d3],
            grad: [f1, f2],
        }
    }

    pub fn r00_at(&self, y: Vec2) -> f64 {
        let m = &self.r00;
        m[0][0] * y[0] * y[0] + 2.0 * m[0][1] * y[0] * y[1] + m[1][1] * y[1] * y[1]
    }

    pub fn r0_at(&self, y: Vec2) -> f64 {
        self.r0[0] * y[0] + self.r0[1] * y[1]
    }

    /// Spray coefficients `G_αᵏ = ½·r00·f_k` of the surface metric `h`.
    pub fn riemannian_spray(&self, y: Vec2) -> Vec2 {
        let r00 = self.r00_at(y);
        [0.5 * r00 * self.grad[0], 0.5 * r00 * self.grad[1]]
    }
}

fn check_gbar(gbar: f64) -> Result<()> {
    if !(gbar >= 0.0 && gbar.is_finite()) {
        return Err(Error::InvalidArgument(format!("gbar must be finite and non-negative, got {gbar}")));
    }
    Ok(())
}

pub fn point_geometry(surface: &Surface, x1: f64, x2: f64, gbar: f64) -> Result<PointGeometry> {
    check_gbar(gbar)?;
    Ok(PointGeometry::from_jet([x1, x2], surface.jet(x1, x2)?, gbar))
}

pub fn curvature_data(surface: &Surface, x1: f64, x2: f64, gbar: f64) -> Result<CurvatureData> {
    check_gbar(gbar)?;
    Ok(CurvatureData::from_jet(&surface.jet(x1, x2)?))
}

/// `(α, β)` with `α = ‖y‖_h`.
pub fn alpha_beta(geom: &PointGeometry, y: Vec2) -> (f64, f64) {
    (geom.norm(y), geom.beta(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn parses_spec_strings() {
        assert_eq!("gauss3".parse::<Surface>().unwrap(), Surface::Gauss3);
        assert_eq!("incline:0.5".parse::<Surface>().unwrap(), Surface::Incline(0.5));
        let s: Surface = "expr:x1*x2".parse().unwrap();
        assert_eq!(s.to_string(), "expr:x1*x2");
        assert!(matches!("plane".parse::<Surface>(), Err(Error::SurfaceSpec(_))));
        assert!(matches!("incline:abc".parse::<Surface>(), Err(Error::SurfaceSpec(_))));
        assert!(matches!("expr:x1 +".parse::<Surface>(), Err(Error::Syntax { .. })));
    }

    #[test]
    fn incline_geometry() {
        let g = point_geometry(&Surface::Incline(0.5), 0.0, 0.0, 1.0).unwrap();
        assert_eq!(g.q, 0.25);
        assert_eq!(g.h, [[1.25, 0.0], [0.0, 1.0]]);
        assert_relative_eq!(g.wind[0], -0.4, epsilon = 1e-15);
        assert_eq!(g.wind[1], 0.0);
        assert_relative_eq!(g.wind_norm, 1.0 / 5f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn flat_geometry() {
        let s = Surface::from_formula("0").unwrap();
        let g = point_geometry(&s, 0.3, -2.0, 4.0).unwrap();
        assert_eq!(g.q, 0.0);
        assert_eq!(g.h, [[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(g.wind, [0.0, 0.0]);
        assert!(g.frame().is_none());
    }

    #[test]
    fn gauss3_steep_point() {
        let g = point_geometry(&Surface::Gauss3, 0.652, 1.272, 1.0).unwrap();
        assert!((g.wind_norm - 0.653).abs() < 1e-3, "{}", g.wind_norm);
    }

    #[test]
    fn rejects_negative_gbar() {
        assert!(point_geometry(&Surface::Gauss3, 0.0, 0.0, -1.0).is_err());
        assert!(curvature_data(&Surface::Gauss3, 0.0, 0.0, f64::NAN).is_err());
    }

    #[test]
    fn gauss3_jet_matches_parsed_formula() {
        let parsed = Surface::from_formula(GAUSS3_FORMULA).unwrap();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..500 {
            let (a, b) = (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let j = Surface::Gauss3.jet(a, b).unwrap();
            let k = parsed.jet(a, b).unwrap();
            assert_relative_eq!(j.value, k.value, epsilon = 1e-14);
            for i in 0..2 {
                assert_relative_eq!(j.grad[i], k.grad[i], epsilon = 1e-14);
            }
            for i in 0..3 {
                assert_relative_eq!(j.hess[i], k.hess[i], epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn alpha_beta_examples() {
        let g = point_geometry(&Surface::Incline(0.5), 0.0, 0.0, 1.0).unwrap();
        assert_eq!(alpha_beta(&g, [0.0, 1.0]), (1.0, 0.0));
        let (a, b) = alpha_beta(&g, [-1.0, 0.0]);
        assert_relative_eq!(a, 5f64.sqrt() / 2.0, epsilon = 1e-15);
        assert_eq!(b, -0.5);
        let (a2, b2) = alpha_beta(&g, [-2.0, 0.0]);
        assert_eq!((a2, b2), (2.0 * a, 2.0 * b));
        // β = −h(y, G^T)/ḡ
        let y = [0.3, -0.7];
        assert_relative_eq!(g.beta(y), -g.dot(y, g.wind) / g.gbar, epsilon = 1e-15);
    }

    #[test]
    fn frame_is_orthonormal_and_downhill() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..200 {
            let x = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
            let g = point_geometry(&Surface::Gauss3, x[0], x[1], 1.3).unwrap();
            let fr = g.frame().unwrap();
            assert_relative_eq!(g.dot(fr.e1, fr.e1), 1.0, epsilon = 1e-12);
            assert_relative_eq!(g.dot(fr.e2, fr.e2), 1.0, epsilon = 1e-12);
            assert!(g.dot(fr.e1, fr.e2).abs() < 1e-12);
            // wind is a positive multiple of e1
            assert_relative_eq!(g.dot(g.wind, fr.e1), g.wind_norm, epsilon = 1e-12, max_relative = 1e-12);
            let y = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
            let (xx, yy) = g.to_frame(y).unwrap();
            let back = g.from_frame(xx, yy).unwrap();
            assert_relative_eq!(back[0], y[0], epsilon = 1e-12);
            assert_relative_eq!(back[1], y[1], epsilon = 1e-12);
            assert_relative_eq!(xx * xx + yy * yy, g.dot(y, y), epsilon = 1e-12);
            // X = −√((q+1)/q)·β
            assert_relative_eq!(xx, -((g.q + 1.0) / g.q).sqrt() * g.beta(y), epsilon = 1e-12);
        }
    }

    #[test]
    fn incline_frame_link() {
        let g = point_geometry(&Surface::Incline(0.5), 0.0, 0.0, 1.0).unwrap();
        let y = g.from_frame(0.8, -0.3).unwrap();
        assert_relative_eq!(y[0], -2.0 * 0.8 / 5f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(y[1], 0.3, epsilon = 1e-15);
    }

    #[test]
    fn h_positive_definite_and_wind_norm_two_ways() {
        let mut rng = StdRng::seed_from_u64(1);
        let surfaces = [
            Surface::Gauss3,
            Surface::Incline(0.5),
            Surface::Incline(-3.0),
            Surface::from_formula("sin(x1)*cos(2*x2) + x1^2/5").unwrap(),
        ];
        for s in &surfaces {
            for _ in 0..10_000 {
                let x = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
                let gbar = rng.gen_range(0.0..8.0);
                let g = point_geometry(s, x[0], x[1], gbar).unwrap();
                assert!(g.h[0][0] > 0.0);
                let det = g.h[0][0] * g.h[1][1] - g.h[0][1] * g.h[1][0];
                assert!(det > 0.0);
                assert_relative_eq!(det, 1.0 + g.q, max_relative = 1e-12);
                let direct = g.norm(g.wind);
                assert_relative_eq!(direct, g.wind_norm, max_relative = 1e-12, epsilon = 1e-300);
            }
        }
    }

    #[test]
    fn incline_curvature_is_exactly_zero() {
        for s in [Surface::Incline(0.5), Surface::from_formula("0.5*x1 - 2*x2 + 7").unwrap()] {
            let c = curvature_data(&s, 1.7, -0.4, 2.0).unwrap();
            assert_eq!(c.r00, [[0.0; 2]; 2]);
            assert_eq!(c.r0, [0.0; 2]);
            assert_eq!(c.r, 0.0);
            assert_eq!(c.rup, [0.0; 2]);
            assert_eq!(c.riemannian_spray([0.3, 2.0]), [0.0; 2]);
        }
    }

    #[test]
    fn paraboloid_curvature_by_hand() {
        let s = Surface::from_formula("(x1^2+x2^2)/2").unwrap();
        let c = curvature_data(&s, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(c.r00, [[0.5, 0.0], [0.0, 0.5]]);
        assert_eq!(c.r0, [0.25, 0.0]);
        assert_eq!(c.r, 0.125);
        assert_eq!(c.rup, [0.125, 0.0]);
    }

    #[test]
    fn mixed_partials_commute() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..100 {
            let x = [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)];
            let c = curvature_data(&Surface::Gauss3, x[0], x[1], 1.0).unwrap();
            assert_eq!(c.r00[0][1], c.r00[1][0]);
        }
    }

    #[test]
    fn constant_slope_cone_has_vanishing_r_terms() {
        let s = Surface::from_formula("0.7*sqrt(x1^2+x2^2)").unwrap();
        for k in 0..24 {
            let t = k as f64 * std::f64::consts::TAU / 24.0;
            let rad = 1.0 + 0.1 * k as f64;
            let c = curvature_data(&s, rad * t.cos(), rad * t.sin(), 1.0).unwrap();
            assert!(c.r.abs() < 1e-15);
            assert!(c.rup[0].abs() < 1e-15 && c.rup[1].abs() < 1e-15);
            assert!(c.r0[0].abs() < 1e-15 && c.r0[1].abs() < 1e-15);
            assert!(c.r00_at([-t.sin(), t.cos()]) > 1e-3);
        }
    }

    /// `r`-terms from covariant derivatives of `w_i = −ḡ f_i`, everything by
    /// finite differences of the plain height function.
    fn covariant_oracle(s: &Surface, x: Vec2, gbar: f64) -> ([[f64; 2]; 2], Vec2, f64, Vec2) {
        let e = 1e-4;
        let f = |a: f64, b: f64| s.height(a, b).unwrap();
        let grad = |a: f64, b: f64| {
            [(f(a + e, b) - f(a - e, b)) / (2.0 * e), (f(a, b + e) - f(a, b - e)) / (2.0 * e)]
        };
        let metric = |a: f64, b: f64| {
            let g = grad(a, b);
            [[1.0 + g[0] * g[0], g[0] * g[1]], [g[0] * g[1], 1.0 + g[1] * g[1]]]
        };
        let (a, b) = (x[0], x[1]);
        let h = metric(a, b);
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let hi = [[h[1][1] / det, -h[0][1] / det], [-h[1][0] / det, h[0][0] / det]];
        let k = 1e-3;
        let dh: Vec<[[f64; 2]; 2]> = (0..2)
            .map(|m| {
                let (p, q) = if m == 0 { (metric(a + k, b), metric(a - k, b)) } else { (metric(a, b + k), metric(a, b - k)) };
                let mut out = [[0.0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        out[i][j] = (p[i][j] - q[i][j]) / (2.0 * k);
                    }
                }
                out
            })
            .collect();
        let mut christoffel = [[[0.0; 2]; 2]; 2];
        for kk in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    let mut acc = 0.0;
                    for m in 0..2 {
                        acc += 0.5 * hi[kk][m] * (dh[i][j][m] + dh[j][i][m] - dh[m][i][j]);
                    }
                    christoffel[kk][i][j] = acc;
                }
            }
        }
        let wl = |a: f64, b: f64| {
            let g = grad(a, b);
            [-gbar * g[0], -gbar * g[1]]
        };
        let mut dw = [[0.0; 2]; 2];
        for j in 0..2 {
            let (p, q) = if j == 0 { (wl(a + k, b), wl(a - k, b)) } else { (wl(a, b + k), wl(a, b - k)) };
            for i in 0..2 {
                dw[i][j] = (p[i] - q[i]) / (2.0 * k);
            }
        }
        let w_low = wl(a, b);
        let w_up = [hi[0][0] * w_low[0] + hi[0][1] * w_low[1], hi[1][0] * w_low[0] + hi[1][1] * w_low[1]];
        let mut cov = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                cov[i][j] = dw[i][j] - (0..2).map(|kk| christoffel[kk][i][j] * w_low[kk]).sum::<f64>();
            }
        }
        let mut rij = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                rij[i][j] = -0.5 * (cov[i][j] + cov[j][i]) / gbar;
            }
        }
        let ri = [
            (cov[0][0] * w_up[0] + cov[0][1] * w_up[1]) / (gbar * gbar),
            (cov[1][0] * w_up[0] + cov[1][1] * w_up[1]) / (gbar * gbar),
        ];
        let r = -(0..2)
            .flat_map(|i| (0..2).map(move |j| (i, j)))
            .map(|(i, j)| cov[i][j] * w_up[i] * w_up[j])
            .sum::<f64>()
            / gbar.powi(3);
        let rup = [hi[0][0] * ri[0] + hi[0][1] * ri[1], hi[1][0] * ri[0] + hi[1][1] * ri[1]];
        (rij, ri, r, rup)
    }

    #[test]
    fn curvature_matches_covariant_derivative_oracle() {
        let mut rng = StdRng::seed_from_u64(17);
        let gbar = 0.76;
        for _ in 0..100 {
            let x = [rng.gen_range(-2.5..2.5), rng.gen_range(-2.5..2.5)];
            let c = curvature_data(&Surface::Gauss3, x[0], x[1], gbar).unwrap();
            let (rij, ri, r, rup) = covariant_oracle(&Surface::Gauss3, x, gbar);
            let tol = 2e-6;
            for i in 0..2 {
                for j in 0..2 {
                    assert!((c.r00[i][j] - rij[i][j]).abs() < tol, "r_ij {:?} vs {:?}", c.r00, rij);
                }
                assert!((c.r0[i] - ri[i]).abs() < tol, "r_i {:?} vs {:?}", c.r0, ri);
                assert!((c.rup[i] - rup[i]).abs() < tol, "r^i {:?} vs {:?} at {x:?}", c.rup, rup);
            }
            assert!((c.r - r).abs() < tol);
        }
    }
}

//! Traction coefficients `(η, η̃)`: region of the parameter square, the
//! strong-convexity wind bound `b̃₀` and the active/dead wind split.

use crate::error::{Error, Result};
use crate::surface::PointGeometry;
use crate::Vec2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    D1,
    D2,
    D3,
    D4,
    /// The corner `(1, 1)`: all wind cancelled.
    Riem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subregion {
    R1,
    R2,
    R3,
    R4,
    /// Diagonal `η = η̃`.
    L0,
    /// Edge `η = 1`.
    L1,
    /// Edge `η̃ = 1`.
    L2,
    InteriorD3,
    InteriorD4,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TractionParams {
    /// Cross-traction coefficient.
    pub eta: f64,
    /// Along-traction coefficient.
    pub eta_tilde: f64,
    pub region: Region,
    pub subregion: Subregion,
    /// Supremum of `‖G^T‖_h` keeping the indicatrix strongly convex.
    pub wind_bound: f64,
}

impl TractionParams {
    pub fn is_riemannian(&self) -> bool {
        self.region == Region::Riem
    }

    pub fn admits(&self, wind_norm: f64) -> bool {
        wind_norm < self.wind_bound
    }

    pub fn check_admissible(&self, wind_norm: f64) -> Result<()> {
        if self.admits(wind_norm) {
            Ok(())
        } else {
            Err(Error::ConvexityViolation { wind_norm, bound: self.wind_bound })
        }
    }
}

pub fn classify(eta: f64, eta_tilde: f64) -> Result<TractionParams> {
    for (name, v) in [("eta", eta), ("eta_tilde", eta_tilde)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::ParamRange { name, value: v });
        }
    }
    let (e, t) = (eta, eta_tilde);
    let (region, subregion) = if e == 1.0 && t == 1.0 {
        (Region::Riem, Subregion::None)
    } else if e >= t && t > 2.0 * e - 1.0 {
        let sub = if e == t {
            Subregion::L0
        } else if e < 0.5 {
            Subregion::R1
        } else {
            Subregion::R3
        };
        (Region::D1, sub)
    } else if (3.0 * t - 1.0) / 2.0 < e && e < t {
        (Region::D2, if t < 1.0 / 3.0 { Subregion::R2 } else { Subregion::R4 })
    } else if e >= 0.5 && t <= 2.0 * e - 1.0 {
        (Region::D3, if e == 1.0 { Subregion::L1 } else { Subregion::InteriorD3 })
    } else {
        debug_assert!(t >= 1.0 / 3.0 && e <= (3.0 * t - 1.0) / 2.0);
        (Region::D4, if t == 1.0 { Subregion::L2 } else { Subregion::InteriorD4 })
    };
    let wind_bound = match region {
        Region::D1 | Region::D2 => 1.0 / (1.0 - t),
        Region::D3 | Region::D4 => 1.0 / (2.0 * (e - t).abs()),
        Region::Riem => f64::INFINITY,
    };
    Ok(TractionParams { eta, eta_tilde, region, subregion, wind_bound })
}

/// Unit self-velocity at heading `θ`, measured from the steepest-descent
/// direction toward `e2`. At critical points `θ` is read in the coordinate basis.
pub fn self_velocity(geom: &PointGeometry, theta: f64) -> Vec2 {
    let (s, c) = theta.sin_cos();
    geom.from_frame(c, s).unwrap_or([c, s])
}

/// Velocity decomposition for a walker heading at `θ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindDecomposition {
    pub u: Vec2,
    /// Projection of `G^T` on `u`.
    pub g_mat: Vec2,
    pub g_mat_perp: Vec2,
    pub active: Vec2,
    pub dead: Vec2,
    /// `v = u + active`.
    pub resultant: Vec2,
}

pub fn wind_decomposition(geom: &PointGeometry, theta: f64, params: &TractionParams) -> WindDecomposition {
    let u = self_velocity(geom, theta);
    let g = geom.wind;
    let p = geom.dot(u, g);
    let g_mat = [p * u[0], p * u[1]];
    let g_mat_perp = [g[0] - g_mat[0], g[1] - g_mat[1]];
    let (e, t) = (params.eta, params.eta_tilde);
    let active = [
        (1.0 - e) * g_mat_perp[0] + (1.0 - t) * g_mat[0],
        (1.0 - e) * g_mat_perp[1] + (1.0 - t) * g_mat[1],
    ];
    let dead = [t * g_mat[0] + e * g_mat_perp[0], t * g_mat[1] + e * g_mat_perp[1]];
    WindDecomposition {
        u,
        g_mat,
        g_mat_perp,
        active,
        dead,
        resultant: [u[0] + active[0], u[1] + active[1]],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionKind {
    /// `η > η̃`: slippery slope with cross coefficient `c₁`.
    Slippery,
    /// `η < η̃`: slippery cross slope with along coefficient `c₂`.
    SCross,
    /// `η = η̃`: Zermelo navigation with a weakened wind.
    RZnp,
}

/// One-coefficient problem equivalent to `(η, η̃)` once the wind is scaled by `scale`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    pub kind: ReductionKind,
    pub c: f64,
    pub scale: f64,
}

impl Reduction {
    /// Traction pair of the reduced problem.
    pub fn reduced_pair(&self) -> (f64, f64) {
        match self.kind {
            ReductionKind::Slippery => (self.c, 0.0),
            ReductionKind::SCross => (0.0, self.c),
            ReductionKind::RZnp => (0.0, 0.0),
        }
    }
}

pub fn reduction_coefficients(eta: f64, eta_tilde: f64) -> Result<Reduction> {
    let p = classify(eta, eta_tilde)?;
    if p.is_riemannian() {
        return Err(Error::InvalidArgument("no reduction at the Riemannian corner (1, 1)".into()));
    }
    let (e, t) = (eta, eta_tilde);
    Ok(if e > t {
        Reduction { kind: ReductionKind::Slippery, c: (e - t) / (1.0 - t), scale: 1.0 - t }
    } else if e < t {
        Reduction { kind: ReductionKind::SCross, c: (t - e) / (1.0 - e), scale: 1.0 - e }
    } else {
        Reduction { kind: ReductionKind::RZnp, c: 0.0, scale: 1.0 - e }
    })
}

//! Time-optimal navigation on slippery slopes.
//!
//! A surface `z = f(x1, x2)` under a gravitational wind is explored by a
//! walker whose traction cancels a fraction `η` of the cross-wind and `η̃` of
//! the along-wind. The resulting travel-time metric is a Finsler metric of
//! general `(α, β)` type, found as the positive root of a quartic. This crate
//! evaluates it, integrates its geodesics and assembles time fronts.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::result_large_err, clippy::suspicious_arithmetic_impl, clippy::needless_range_loop)]

pub mod error;
pub mod expr;
pub mod front;
pub mod geodesic;
pub mod metric;
pub mod params;
pub mod surface;
pub mod survey;

pub use error::{Error, Result};
pub use expr::{Expr, Jet2};
pub use front::{envelope_bounds, time_front, Envelope, FrontSample, TimeFront};
pub use geodesic::{
    initial_velocity, integrate, path_time, spray, spray_terms, GeodesicPath, GeodesicState,
    IntegrateOptions, PathError, SprayTerms,
};
pub use metric::{
    indicatrix, matsumoto_oracle, navigation_condition, randers_oracle, slope_metric, Branch,
    IndicatrixPoint, MetricEval,
};
pub use params::{
    classify, reduction_coefficients, wind_decomposition, Reduction, ReductionKind, Region,
    Subregion, TractionParams, WindDecomposition,
};
pub use surface::{alpha_beta, curvature_data, point_geometry, CurvatureData, PointGeometry, Surface};
pub use survey::{bound_surface, gbar_bound, max_steepness, BoundSample, Region2, Steepness};

pub type Vec2 = [f64; 2];

//! Shared inputs for the benchmarks.

use slope_nav::{classify, initial_velocity, PointGeometry, Surface, TractionParams};

/// Deterministic states on the triple hill with an admissible wind.
pub fn gauss3_states(n: usize, params: &TractionParams, gbar: f64) -> Vec<(PointGeometry, [f64; 2])> {
    (0..n)
        .map(|k| {
            let u = k as f64 / n as f64;
            let x = [-2.0 + 4.0 * u, 2.0 * (7.0 * u).sin()];
            let (geom, _) = Surface::Gauss3.local(x, gbar).expect("gauss3 is defined everywhere");
            let y = initial_velocity(&geom, 13.0 * u, params).expect("admissible by construction");
            (geom, y)
        })
        .collect()
}

pub fn paper_params() -> TractionParams {
    classify(0.7, 0.8).expect("valid pair")
}

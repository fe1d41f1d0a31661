use std::path::Path;

use slope_nav::front::{envelope_bounds_with, front_from_fan, geodesic_fan, headings, TimeFront};
use slope_nav::geodesic::integrate_with;
use slope_nav::survey::gbar_bound_for;
use slope_nav::{
    bound_surface, classify, indicatrix, max_steepness, Error, IntegrateOptions, Region2, Surface, TractionParams,
};

use crate::args::{
    BoundSurfaceArgs, Common, ConvexityArgs, EnvelopeArgs, FrontArgs, GeodesicArgs, IndicatrixArgs, Integration,
    SweepArgs,
};
use crate::output::{num, svg, Csv, Polyline, Stroke};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. }
            | Error::UnknownIdentifier { .. }
            | Error::Arity { .. }
            | Error::SurfaceSpec(_)
            | Error::ParamRange { .. }
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Run = Result<(), Failure>;

struct Setup {
    surface: Surface,
    params: TractionParams,
    gbar: f64,
}

fn setup(c: &Common) -> Result<Setup, Failure> {
    Ok(Setup { surface: c.surface.parse()?, params: classify(c.eta, c.eta_tilde)?, gbar: c.gbar })
}

fn options(i: &Integration) -> IntegrateOptions {
    IntegrateOptions { dt: i.dt, drift_tol: i.drift_tol, renormalize: i.renormalize, adaptive: i.adaptive }
}

fn write_svg(path: Option<&Path>, lines: &[Polyline]) -> Run {
    if let Some(p) = path {
        std::fs::write(p, svg(lines))?;
    }
    Ok(())
}

fn front_line(front: &TimeFront, stroke: Stroke) -> Polyline {
    let points = front.samples.iter().map(|s| s.endpoint.unwrap_or([f64::NAN; 2])).collect();
    Polyline { points, closed: front.is_complete(), stroke }
}

fn warn_gaps(front: &TimeFront, label: &str) {
    let failed = front.samples.iter().filter(|s| s.endpoint.is_none()).count();
    if let Some(err) = front.first_error() {
        eprintln!("warning: {label}: {failed} of {} rays failed; first: {err}", front.samples.len());
    }
}

pub fn indicatrix_cmd(a: &IndicatrixArgs) -> Run {
    let s = setup(&a.common)?;
    if a.n < 3 {
        return Err(Failure::Usage(format!("--n must be at least 3, got {}", a.n)));
    }
    let (geom, _) = s.surface.local(a.at, s.gbar)?;
    let pts = indicatrix(&geom, &s.params, &headings(a.n))?;
    let mut csv = Csv::new(&["theta", "X", "Y", "y1", "y2"]);
    for p in &pts {
        csv.row(&[num(p.theta), num(p.x), num(p.y), num(p.v[0]), num(p.v[1])]);
    }
    csv.write(a.common.out.as_deref())?;
    let line = Polyline {
        points: pts.iter().map(|p| p.v).collect(),
        closed: true,
        stroke: Stroke::for_params(s.params.eta, s.params.eta_tilde),
    };
    write_svg(a.svg.as_deref(), &[line])
}

pub fn geodesic_cmd(a: &GeodesicArgs) -> Run {
    let s = setup(&a.common)?;
    let result = integrate_with(&s.surface, a.x0, a.theta, &s.params, s.gbar, a.t, &options(&a.integration));
    let (path, error) = match result {
        Ok(p) => (p, None),
        Err(e) => (e.partial.clone(), Some(e)),
    };
    let mut csv = Csv::new(&["t", "x1", "x2", "y1", "y2", "Fdrift"]);
    for st in &path.states {
        csv.row(&[num(st.t), num(st.x[0]), num(st.x[1]), num(st.y[0]), num(st.y[1]), num(st.drift)]);
    }
    csv.write(a.common.out.as_deref())?;
    let line = Polyline { points: path.points(), closed: false, stroke: Stroke::GENERIC };
    write_svg(a.svg.as_deref(), &[line])?;
    match error {
        Some(e) => Err(Failure::from(e.error.clone()).with_context(&format!("after t = {}", e.partial.last().t))),
        None => Ok(()),
    }
}

impl Failure {
    fn with_context(self, ctx: &str) -> Self {
        match self {
            Failure::Usage(m) => Failure::Usage(format!("{m} ({ctx})")),
            Failure::Numeric(m) => Failure::Numeric(format!("{m} ({ctx})")),
        }
    }
}

fn check_times(ts: &[f64]) -> Run {
    if ts.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Failure::Usage("front times must be positive".into()));
    }
    Ok(())
}

fn check_rays(n: usize) -> Run {
    if n < 8 {
        return Err(Failure::Usage(format!("--rays must be at least 8, got {n}")));
    }
    Ok(())
}

pub fn front_cmd(a: &FrontArgs) -> Run {
    let s = setup(&a.common)?;
    let times = &a.t.0;
    check_times(times)?;
    check_rays(a.rays)?;
    let t_max = times.iter().copied().fold(0.0, f64::max);
    let fan = geodesic_fan(&s.surface, a.center, &s.params, s.gbar, t_max, a.rays, &options(&a.integration));
    let mut csv = Csv::new(&["t", "k", "theta", "x1", "x2", "ok"]);
    let mut lines = Vec::new();
    let stroke = Stroke::for_params(s.params.eta, s.params.eta_tilde);
    for &t in times {
        let front = front_from_fan(&fan, a.center, &s.params, s.gbar, t);
        warn_gaps(&front, &format!("t = {t}"));
        for (k, smp) in front.samples.iter().enumerate() {
            let [x1, x2] = smp.endpoint.unwrap_or([f64::NAN; 2]);
            csv.row(&[num(t), k.to_string(), num(smp.theta), num(x1), num(x2), u8::from(smp.endpoint.is_some()).to_string()]);
        }
        lines.push(front_line(&front, stroke));
    }
    csv.write(a.common.out.as_deref())?;
    for ray in &fan {
        let path = match ray {
            Ok(p) => p,
            Err(e) => &e.partial,
        };
        lines.push(Polyline { points: path.points(), closed: false, stroke: Stroke::RAY });
    }
    write_svg(a.svg.as_deref(), &lines)
}

pub fn envelope_cmd(a: &EnvelopeArgs) -> Run {
    let surface: Surface = a.common.surface.parse()?;
    check_times(&[a.t])?;
    check_rays(a.rays)?;
    let env = envelope_bounds_with(&surface, a.center, a.common.gbar, a.t, a.rays, &options(&a.integration))?;
    let mut csv = Csv::new(&["case", "eta", "eta_tilde", "theta", "x1", "x2"]);
    let mut lines = Vec::new();
    for (name, front) in env.fronts() {
        for smp in &front.samples {
            let [x1, x2] = smp.endpoint.unwrap_or([f64::NAN; 2]);
            csv.row(&[
                name.to_string(),
                num(front.params.eta),
                num(front.params.eta_tilde),
                num(smp.theta),
                num(x1),
                num(x2),
            ]);
        }
        lines.push(front_line(front, Stroke::for_params(front.params.eta, front.params.eta_tilde)));
    }
    csv.write(a.common.out.as_deref())?;
    write_svg(a.svg.as_deref(), &lines)
}

pub fn convexity_cmd(a: &ConvexityArgs) -> Run {
    let s = setup(&a.common)?;
    let [x1a, x2a, x1b, x2b] = a.region.0[..] else {
        return Err(Failure::Usage("--region takes x1min,x2min,x1max,x2max".into()));
    };
    let region = Region2::new(x1a, x2a, x1b, x2b)?;
    let st = max_steepness(&s.surface, &region, a.grid)?;
    // the MAT pair has the smallest wind bound over the parameter square
    let worst = gbar_bound_for(st.m, &classify(1.0, 0.0)?);
    let mut csv = Csv::new(&["m", "argmax_x1", "argmax_x2", "wind_bound", "gbar_bound", "gbar_bound_worst"]);
    csv.row(&[
        num(st.m),
        num(st.argmax[0]),
        num(st.argmax[1]),
        num(s.params.wind_bound),
        num(gbar_bound_for(st.m, &s.params)),
        num(worst),
    ]);
    csv.write(a.common.out.as_deref())?;
    Ok(())
}

pub fn bound_surface_cmd(a: &BoundSurfaceArgs) -> Run {
    let mut csv = Csv::new(&["eta", "eta_tilde", "bound", "clamped"]);
    for b in bound_surface(a.grid, a.ceiling)? {
        csv.row(&[num(b.eta), num(b.eta_tilde), num(b.bound), num(b.clamped)]);
    }
    csv.write(a.out.as_deref())?;
    Ok(())
}

pub fn sweep_cmd(a: &SweepArgs) -> Run {
    let s = setup(&a.common)?;
    check_times(&[a.t])?;
    check_rays(a.rays)?;
    let opts = options(&a.integration);
    let mut csv = Csv::new(&["gbar", "theta", "x1", "x2", "ok"]);
    let mut lines = Vec::new();
    for &gbar in &a.gbars.0 {
        let fan = geodesic_fan(&s.surface, a.center, &s.params, gbar, a.t, a.rays, &opts);
        let front = front_from_fan(&fan, a.center, &s.params, gbar, a.t);
        warn_gaps(&front, &format!("gbar = {gbar}"));
        for smp in &front.samples {
            let [x1, x2] = smp.endpoint.unwrap_or([f64::NAN; 2]);
            csv.row(&[num(gbar), num(smp.theta), num(x1), num(x2), u8::from(smp.endpoint.is_some()).to_string()]);
        }
        if let Some(c) = front.centroid() {
            eprintln!("gbar = {gbar}: centroid ({}, {})", c[0], c[1]);
        }
        lines.push(front_line(&front, Stroke::for_params(s.params.eta, s.params.eta_tilde)));
    }
    csv.write(a.common.out.as_deref())?;
    write_svg(a.svg.as_deref(), &lines)
}

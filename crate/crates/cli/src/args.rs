use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

#[derive(Debug, Parser)]
#[command(name = "slope-nav", version, about = "Time-optimal navigation on slippery slopes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unit-time indicatrix at one point: theta,X,Y,y1,y2.
    Indicatrix(IndicatrixArgs),
    /// One time geodesic: t,x1,x2,y1,y2,Fdrift.
    Geodesic(GeodesicArgs),
    /// Time fronts from a fan of geodesics: t,k,theta,x1,x2,ok.
    Front(FrontArgs),
    /// Fronts of the ZNP, RIEM, MAT and CROSS cases: case,eta,eta_tilde,theta,x1,x2.
    Envelope(EnvelopeArgs),
    /// Maximum steepness over a box and the implied wind-force bounds.
    Convexity(ConvexityArgs),
    /// Wind bound over the parameter square: eta,eta_tilde,bound,clamped.
    BoundSurface(BoundSurfaceArgs),
    /// Unit fronts for several wind forces: gbar,theta,x1,x2,ok.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// `gauss3`, `incline:<a>` or `expr:<formula>`.
    #[arg(long, default_value = "gauss3")]
    pub surface: String,
    #[arg(long, default_value_t = 0.7)]
    pub eta: f64,
    #[arg(long = "eta-tilde", default_value_t = 0.8)]
    pub eta_tilde: f64,
    #[arg(long, default_value_t = 0.76)]
    pub gbar: f64,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON object whose keys mirror the flag names; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Integration {
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long = "drift-tol", default_value_t = 1e-6)]
    pub drift_tol: f64,
    /// Project the velocity back onto the indicatrix after every step.
    #[arg(long)]
    pub renormalize: bool,
    /// Adapt the step to the per-step metric drift.
    #[arg(long)]
    pub adaptive: bool,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct IndicatrixArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value = "0,0", value_parser = pair, allow_hyphen_values = true)]
    pub at: [f64; 2],
    #[arg(long, default_value_t = 256)]
    pub n: usize,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct GeodesicArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub integration: Integration,
    #[arg(long, default_value = "0,0", value_parser = pair, allow_hyphen_values = true)]
    pub x0: [f64; 2],
    /// Heading in radians, measured from steepest descent.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct FrontArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub integration: Integration,
    #[arg(long, default_value = "0,0", value_parser = pair, allow_hyphen_values = true)]
    pub center: [f64; 2],
    /// Comma-separated front times.
    #[arg(long, default_value = "1", value_parser = list)]
    pub t: List,
    #[arg(long, default_value_t = 32)]
    pub rays: usize,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct EnvelopeArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub integration: Integration,
    #[arg(long, default_value = "0,0", value_parser = pair, allow_hyphen_values = true)]
    pub center: [f64; 2],
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 64)]
    pub rays: usize,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct ConvexityArgs {
    #[command(flatten)]
    pub common: Common,
    /// `x1min,x2min,x1max,x2max`.
    #[arg(long, default_value = "-3,-3,3,3", value_parser = list, allow_hyphen_values = true)]
    pub region: List,
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct BoundSurfaceArgs {
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    pub grid: usize,
    #[arg(long, default_value_t = 5.0)]
    pub ceiling: f64,
}

#[derive(Debug, Args)]
#[command(args_override_self = true)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub integration: Integration,
    #[arg(long, default_value = "1,0", value_parser = pair, allow_hyphen_values = true)]
    pub center: [f64; 2],
    /// Comma-separated wind forces.
    #[arg(long, default_value = "0.76,3,5,7.65", value_parser = list)]
    pub gbars: List,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 32)]
    pub rays: usize,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

fn numbers(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|v| v.trim().parse::<f64>().map_err(|_| format!("`{v}` is not a number")))
        .collect()
}

fn pair(s: &str) -> Result<[f64; 2], String> {
    match numbers(s)?.as_slice() {
        [a, b] => Ok([*a, *b]),
        _ => Err(format!("expected two comma-separated numbers, got `{s}`")),
    }
}

/// Comma-separated numbers given as one flag value.
#[derive(Debug, Clone, PartialEq)]
pub struct List(pub Vec<f64>);

fn list(s: &str) -> Result<List, String> {
    numbers(s).map(List)
}

/// Flags equivalent to a JSON config object.
pub fn config_flags(json: &str) -> Result<Vec<String>, String> {
    let value: Value = serde_json::from_str(json).map_err(|e| format!("config is not valid JSON: {e}"))?;
    let Value::Object(map) = value else {
        return Err("config must be a JSON object".into());
    };
    let mut out = Vec::new();
    for (key, v) in map {
        if key == "config" {
            return Err("config files cannot nest `config`".into());
        }
        let scalar = |v: &Value| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            _ => Err(format!("config key `{key}` has an unsupported value")),
        };
        match &v {
            Value::Bool(true) => out.push(format!("--{key}")),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                let parts = items.iter().map(scalar).collect::<Result<Vec<_>, _>>()?;
                out.push(format!("--{key}={}", parts.join(",")));
            }
            other => out.push(format!("--{key}={}", scalar(other)?)),
        }
    }
    Ok(out)
}

/// Splices the flags of a `--config` file in front of the command-line flags,
/// so later occurrences on the command line win.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or("--config needs a path")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let flags = config_flags(&text)?;
    // program name and subcommand come first
    let split = rest.len().min(2);
    let mut out: Vec<String> = rest[..split].to_vec();
    out.extend(flags);
    out.extend(rest[split..].iter().cloned());
    Ok(out)
}

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown identifier '{name}' at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },

    #[error("function '{name}' takes {expected} argument(s), got {found} (byte {offset})")]
    Arity { name: String, expected: usize, found: usize, offset: usize },

    #[error("domain error in '{expr}': {message} (value {value})")]
    Domain { expr: String, message: String, value: f64 },

    #[error("invalid surface spec '{0}': expected expr:<formula>, incline:<a> or gauss3")]
    SurfaceSpec(String),

    #[error("{name} = {value} is outside [0, 1]")]
    ParamRange { name: &'static str, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("wind norm {wind_norm} is not below the strong convexity bound {bound}")]
    ConvexityViolation { wind_norm: f64, bound: f64 },

    #[error("oracle precondition violated: {0}")]
    Precondition(String),

    #[error("expected exactly one admissible positive root, found {count}")]
    RootCount { count: usize },

    #[error("orthonormal frame is undefined at a critical point (q = 0)")]
    SingularFrame,

    #[error("degenerate denominator {name} = {value:e}")]
    DegenerateDenominator { name: &'static str, value: f64 },

    #[error("metric drift {drift:e} exceeds tolerance {tol:e} at t = {t}; try a smaller step")]
    Drift { t: f64, drift: f64, tol: f64 },
}

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("abscissa {z} lies outside the closed interval [{lo}, {hi}]")]
    OutOfInterval { z: f64, lo: f64, hi: f64 },
    #[error("profile is not a graph r = f(z): {0}")]
    NotAGraph(&'static str),
    #[error("invalid profile: {0}")]
    NonSmooth(String),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("half-thickness {eps} violates the injectivity bound {bound}")]
    InvalidThickness { eps: f64, bound: f64 },
    #[error("invalid material: {0}")]
    InvalidMaterial(String),
    #[error("Poisson ratio {nu} is at or beyond the incompressible limit 0.5")]
    PoissonLocking { nu: f64 },
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("unsupported shell class {0}")]
    UnsupportedClass(String),
    #[error("g(z0) = {0} is not positive")]
    NegativeG(f64),
    #[error("invalid mesh parameters: {0}")]
    InvalidMesh(String),
    #[error("non-positive Jacobian {det} in element {element}")]
    DegenerateJacobian { element: usize, det: f64 },
    #[error("radius {r} <= 0 at a quadrature point of element {element}")]
    QuadratureUnderflow { element: usize, r: f64 },
    #[error("boundary layer at distance {distance} exceeds half the meridian length {half_length}")]
    LayerCollision { distance: f64, half_length: f64 },
    #[error("factorization failed at pivot {pivot}")]
    FactorizationFailure { pivot: usize },
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("invalid eigenproblem: {0}")]
    InvalidProblem(String),
    #[error("dispersion sweep reached the cap k = {cap} without a confirmed minimum")]
    KmaxExceeded { cap: u32 },
    #[error("dispersion curve is incomplete (k cap reached)")]
    IncompleteCurve,
    #[error("order estimate needs at least 3 samples spanning a decade: {0}")]
    InsufficientSpan(String),
}

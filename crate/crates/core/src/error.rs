use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-convex quadrilateral{}: |alpha|+|beta| = {measure:.3e}", cell_suffix(*.cell))]
    NonConvex { cell: Option<usize>, measure: f64 },
    #[error("degenerate cell{}", cell_suffix(*.cell))]
    Degenerate { cell: Option<usize> },
    #[error("clockwise vertex order{}", cell_suffix(*.cell))]
    BadOrientation { cell: Option<usize> },
    #[error("invalid mesh topology: {0}")]
    InvalidTopology(String),
    #[error("perturbation failed at vertex {vertex} after {attempts} attempts")]
    PerturbationFailed { vertex: usize, attempts: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("local DOF matrix is ill-conditioned (condition estimate {0:.3e})")]
    IllConditioned(f64),
    #[error("unsupported quadrature degree {0}")]
    UnsupportedDegree(usize),
    #[error("step-2 matrix is singular (determinant {0:.3e})")]
    SingularStep2(f64),
    #[error("point ({x}, {y}) lies outside cell {cell}")]
    PointOutsideCell { cell: usize, x: f64, y: f64 },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("iterative solver did not converge: relative residual {residual:.3e} after {iterations} iterations")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("saddle-point system is rank deficient")]
    RankDeficient,
    #[error("eigenvalue computation failed: {0}")]
    EigFailure(String),
    #[error("incompatible mesh or DOF maps: {0}")]
    IncompatibleMesh(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("at least two points are required for a plot, got {0}")]
    TooFewPoints(usize),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
}

fn cell_suffix(cell: Option<usize>) -> String {
    match cell {
        Some(c) => format!(" (cell {c})"),
        None => String::new(),
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

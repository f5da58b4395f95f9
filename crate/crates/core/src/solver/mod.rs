//! Linear solvers for the Poisson, biharmonic and Stokes systems.

mod direct;
mod krylov;
mod stokes;

pub use direct::{solve_spd, solve_symmetric_indefinite, Method, SolveReport, SpdFactor, DEFAULT_TOL, DIRECT_LIMIT};
pub use krylov::{cg, minres, KrylovResult};
pub use stokes::{estimate_infsup, solve_stokes, StokesSolution, DENSE_INFSUP_LIMIT};

//! Manufactured-solution convergence studies, inf-sup tables, complex checks
//! and plots, as driven by the `fem` binary.

mod convergence;
pub mod manufactured;
mod plot;
mod studies;

pub use convergence::{
    rate, run_convergence, to_csv, ConvergenceRow, ExperimentConfig, GridConfig, GridKind, Problem,
    DIV_FREE_TOL,
};
pub use plot::emit_plot;
pub use studies::{infsup_constant, infsup_csv, run_complex_check, run_infsup, InfsupRow, COMMUTATIVITY_TOL};

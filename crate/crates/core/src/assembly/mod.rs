//! Global matrices, load vectors and error norms.

mod forms;
mod norms;
mod sparse;

pub use forms::{
    assemble_div, assemble_hessian, assemble_load, assemble_mass, assemble_pressure_mass,
    assemble_pressure_mean, assemble_stiffness, assemble_vector_load,
};
pub use norms::{div_norm, error_norm, fe_norm, Norm};
pub use sparse::SparseMatrix;

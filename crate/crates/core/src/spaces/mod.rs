//! Global finite element spaces, DOF maps and interpolation.

mod dofmap;
mod function;
mod interpolate;

pub use dofmap::{DofMap, SpaceKind};
pub use function::{cell_basis, FeFunction, FeSpace, Jet};
pub use interpolate::{interpolate_morley, interpolate_qltz_scalar, interpolate_qltz_vector, l2_project_pressure, l2_project_pressure_cellwise};

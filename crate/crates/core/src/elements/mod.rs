//! Local finite elements and quadrature on single cells.

pub mod basis;
pub mod morley;
pub mod pressure;
pub mod qltz;
pub mod quadrature;
pub mod tri;

pub use basis::{AffineCoords, BasisEval, Dof, ElementKind, LocalBasis};
pub use morley::{outward_normals, quad_morley_basis, quad_morley_basis_with_normals, tri_morley_basis, tri_morley_basis_with_normals};
pub use pressure::{pressure_p0_basis, pressure_p1_basis};
pub use qltz::{qltz_basis, qltz_basis_from_dofs, qltz_dofs, qltz_eval, quad_coords, step2_matrix, Step2};
pub use quadrature::{integrate_cell, integrate_edge, QuadratureRule};
pub use tri::{tri_coords, tri_p1nc_basis, tri_p1nc_dofs};

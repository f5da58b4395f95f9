//! Discontinuous pressure bases: `{1, xi, eta}` on quadrilaterals, `{1}` on triangles.

use nalgebra::DMatrix;

use super::basis::{ElementKind, LocalBasis, P0, P1};
use super::qltz::quad_coords;
use super::tri::tri_coords;
use crate::error::Result;
use crate::mesh::QuadFrame;
use crate::Point;

pub fn pressure_p1_basis(frame: &QuadFrame) -> LocalBasis {
    LocalBasis::from_coefficients(ElementKind::PressureP1, quad_coords(frame), P1, DMatrix::identity(3, 3))
}

pub fn pressure_p0_basis(vertices: [Point; 3]) -> Result<LocalBasis> {
    Ok(LocalBasis::from_coefficients(
        ElementKind::PressureP0,
        tri_coords(vertices)?,
        P0,
        DMatrix::identity(1, 1),
    ))
}

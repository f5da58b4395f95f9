//! Nonconforming linear (Crouzeix-Raviart) element on triangles.
//!
//! Local DOF `i` is the mean over edge `i`, which joins vertices `i` and
//! `i + 1`; its dual function is `1 - 2 lambda_{i+2}`.

use nalgebra::DMatrix;

use super::basis::{AffineCoords, Dof, ElementKind, LocalBasis, P1};
use crate::error::{Error, Result};
use crate::mesh::check_triangle;
use crate::Point;

/// Coordinates `(lambda1, lambda2)` of a counterclockwise triangle.
pub fn tri_coords(v: [Point; 3]) -> Result<AffineCoords> {
    check_triangle(&v)?;
    AffineCoords::new(v[0], v[1] - v[0], v[2] - v[0])
}

/// Barycentric `lambda_k` in the monomials `[1, lambda1, lambda2]`.
fn barycentric(k: usize) -> [f64; 3] {
    match k {
        0 => [1.0, -1.0, -1.0],
        1 => [0.0, 1.0, 0.0],
        _ => [0.0, 0.0, 1.0],
    }
}

pub fn tri_p1nc_basis(vertices: [Point; 3]) -> Result<LocalBasis> {
    let coords = tri_coords(vertices).map_err(|e| match e {
        Error::BadOrientation { .. } => Error::Degenerate { cell: None },
        e => e,
    })?;
    let coeffs = DMatrix::from_fn(3, 3, |i, k| {
        let one = if k == 0 { 1.0 } else { 0.0 };
        one - 2.0 * barycentric((i + 2) % 3)[k]
    });
    Ok(LocalBasis::from_coefficients(ElementKind::TriP1nc, coords, P1, coeffs))
}

pub fn tri_p1nc_dofs(v: [Point; 3]) -> Vec<Dof> {
    (0..3).map(|i| Dof::EdgeMean(v[i], v[(i + 1) % 3])).collect()
}

//! Morley elements: vertex values plus edge means of the normal derivative.
//!
//! Quadrilateral space `P2 + span{xi^3, eta^3}`, triangular space `P2`.
//! Local DOF order: `[v0.., e0..]`, edge `i` joining vertices `i` and `i + 1`.

use super::basis::{AffineCoords, Dof, ElementKind, LocalBasis, P2, QUAD_MORLEY};
use super::qltz::quad_coords;
use super::tri::tri_coords;
use crate::error::Result;
use crate::mesh::QuadFrame;
use crate::{Point, Vector};

/// Outward unit normals of a counterclockwise polygon, one per edge.
pub fn outward_normals(vertices: &[Point]) -> Vec<Vector> {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let t = (vertices[(i + 1) % n] - vertices[i]).normalize();
            Vector::new(t.y, -t.x)
        })
        .collect()
}

fn morley_dofs(vertices: &[Point], normals: &[Vector]) -> Vec<Dof> {
    let n = vertices.len();
    assert_eq!(normals.len(), n);
    let mut dofs: Vec<Dof> = vertices.iter().map(|&p| Dof::PointValue(p)).collect();
    for i in 0..n {
        dofs.push(Dof::EdgeNormalMean(vertices[i], vertices[(i + 1) % n], normals[i]));
    }
    dofs
}

/// Quadrilateral Morley basis with outward edge normals.
pub fn quad_morley_basis(frame: &QuadFrame) -> Result<LocalBasis> {
    quad_morley_basis_with_normals(frame, &outward_normals(&frame.vertices()))
}

/// Quadrilateral Morley basis whose edge DOFs use the given unit normals.
pub fn quad_morley_basis_with_normals(frame: &QuadFrame, normals: &[Vector]) -> Result<LocalBasis> {
    let dofs = morley_dofs(&frame.vertices(), normals);
    LocalBasis::from_dofs(ElementKind::QuadMorley, quad_coords(frame), QUAD_MORLEY, &dofs)
}

/// Triangular Morley basis with outward edge normals.
pub fn tri_morley_basis(vertices: [Point; 3]) -> Result<LocalBasis> {
    tri_morley_basis_with_normals(vertices, &outward_normals(&vertices))
}

pub fn tri_morley_basis_with_normals(vertices: [Point; 3], normals: &[Vector]) -> Result<LocalBasis> {
    let coords: AffineCoords = tri_coords(vertices)?;
    LocalBasis::from_dofs(ElementKind::TriMorley, coords, P2, &morley_dofs(&vertices, normals))
}

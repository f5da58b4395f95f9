//! Quadrilateral Lin-Tobiska-Zhou element: `P1 + span{xi^2, eta^2}` with the
//! cell mean and the four edge means as degrees of freedom.
//!
//! Local DOF order: `[cell, e1, e2, e3, e4]`, matching `phi0..phi4`.

use nalgebra::{DMatrix, Matrix2};

use super::basis::{AffineCoords, Dof, ElementKind, LocalBasis, QLTZ};
use super::quadrature::polygon_rule;
use crate::error::{Error, Result};
use crate::mesh::QuadFrame;
use crate::{Point, Vector};

/// Affine coordinates `(xi, eta)` of a quadrilateral frame.
pub fn quad_coords(frame: &QuadFrame) -> AffineCoords {
    AffineCoords::new(frame.origin, frame.s, frame.r).expect("frame has r x s > 0")
}

/// Closed-form dual basis in the monomials `[1, xi, eta, xi^2, eta^2]`.
pub fn qltz_coefficients(alpha: f64, beta: f64) -> DMatrix<f64> {
    let (a, b) = (alpha, beta);
    let c = -3.0 / (2.0 * (a * a + b * b + 3.0));
    let phi0 = [-(4.0 + a * a + b * b) * c, -2.0 * a * c, -2.0 * b * c, 3.0 * c, 3.0 * c];
    let edge = |base: [f64; 5], k: f64| -> [f64; 5] {
        let mut out = base;
        for (o, p) in out.iter_mut().zip(phi0) {
            *o -= k * p;
        }
        out
    };
    let phi1 = edge(
        [(3.0 + b * b) / 4.0, 0.0, (b - 1.0) / 2.0, -0.75, 0.0],
        (b * b - b + 3.0) / 6.0,
    );
    let phi2 = edge(
        [(3.0 + a * a) / 4.0, (a - 1.0) / 2.0, 0.0, 0.0, -0.75],
        (a * a - a + 3.0) / 6.0,
    );
    let phi3 = edge(
        [(3.0 + b * b) / 4.0, 0.0, (b + 1.0) / 2.0, -0.75, 0.0],
        (b * b + b + 3.0) / 6.0,
    );
    let phi4 = edge(
        [(3.0 + a * a) / 4.0, (a + 1.0) / 2.0, 0.0, 0.0, -0.75],
        (a * a + a + 3.0) / 6.0,
    );
    let rows = [phi0, phi1, phi2, phi3, phi4];
    DMatrix::from_fn(5, 5, |i, k| rows[i][k])
}

/// QLTZ basis from the closed-form dual functions.
pub fn qltz_basis(frame: &QuadFrame) -> LocalBasis {
    LocalBasis::from_coefficients(
        ElementKind::Qltz,
        quad_coords(frame),
        QLTZ,
        qltz_coefficients(frame.alpha, frame.beta),
    )
}

/// The QLTZ DOF functionals `[cell mean, e1..e4 means]`.
pub fn qltz_dofs(frame: &QuadFrame) -> Vec<Dof> {
    let v = frame.vertices();
    let mut dofs = vec![Dof::CellMean(v.to_vec())];
    for i in 0..4 {
        dofs.push(Dof::EdgeMean(v[i], v[(i + 1) % 4]));
    }
    dofs
}

/// QLTZ basis obtained by inverting the DOF matrix instead of the closed form.
pub fn qltz_basis_from_dofs(frame: &QuadFrame) -> Result<LocalBasis> {
    LocalBasis::from_dofs(ElementKind::Qltz, quad_coords(frame), QLTZ, &qltz_dofs(frame))
}

/// Values and physical gradients of `phi0..phi4` at `p`.
pub fn qltz_eval(frame: &QuadFrame, p: Point) -> ([f64; 5], [Vector; 5]) {
    let e = qltz_basis(frame).eval(p);
    let mut v = [0.0; 5];
    let mut g = [Vector::zeros(); 5];
    v.copy_from_slice(&e.values);
    g.copy_from_slice(&e.grads);
    (v, g)
}

/// Moment matrix of the cell bubble used by the divergence-preserving
/// interpolant: rows are the tests `eta`, `xi`; columns the derivatives
/// `d/dx`, `d/dy` of `phi0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step2 {
    pub matrix: Matrix2<f64>,
    pub det: f64,
}

/// `[∫ ∂x phi0 eta, ∫ ∂y phi0 eta; ∫ ∂x phi0 xi, ∫ ∂y phi0 xi]` by quadrature.
pub fn step2_matrix(frame: &QuadFrame) -> Result<Step2> {
    let basis = qltz_basis(frame);
    let rule = polygon_rule(&frame.vertices(), 2)?;
    let mut m = Matrix2::zeros();
    for (&p, &w) in rule.points.iter().zip(&rule.weights) {
        let g = basis.eval(p).grads[0];
        let (xi, eta) = frame.xi_eta(p);
        m[(0, 0)] += w * g.x * eta;
        m[(0, 1)] += w * g.y * eta;
        m[(1, 0)] += w * g.x * xi;
        m[(1, 1)] += w * g.y * xi;
    }
    let det = m.determinant();
    if det <= 0.0 {
        return Err(Error::SingularStep2(det));
    }
    Ok(Step2 { matrix: m, det })
}

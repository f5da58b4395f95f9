//! Broken Sobolev norms of errors against exact solutions.

use nalgebra::Matrix2;

use crate::elements::quadrature::{cell_rule, over_integration_degree};
use crate::error::Result;
use crate::spaces::{FeFunction, Jet};
use crate::{Point, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Norm {
    L2,
    /// Broken H1 seminorm `(Σ_K |∇(u - u_h)|²_K)^{1/2}`.
    H1Broken,
    /// Broken H2 seminorm `(Σ_K |∇²(u - u_h)|²_K)^{1/2}`.
    H2Broken,
}

fn pointwise(norm: Norm, a: &Jet, b: &Jet) -> f64 {
    match norm {
        Norm::L2 => (a.0 - b.0).powi(2),
        Norm::H1Broken => (a.1 - b.1).norm_squared(),
        Norm::H2Broken => (a.2 - b.2).norm_squared(),
    }
}

/// `‖u - u_h‖` summed over components; `exact(p, k)` returns the value,
/// gradient and Hessian of component `k` (only the part the norm needs is read).
pub fn error_norm(u_h: &FeFunction<'_>, exact: impl Fn(Point, usize) -> Jet, norm: Norm) -> Result<f64> {
    let space = u_h.space();
    let mesh = space.mesh();
    let degree = over_integration_degree();
    let mut total = 0.0;
    for c in 0..mesh.n_cells() {
        let rule = cell_rule(mesh, c, degree)?;
        for k in 0..space.components() {
            let local = u_h.local_coeffs(c, k);
            let basis = space.basis(c);
            total += rule.integrate(|p| pointwise(norm, &exact(p, k), &basis.combine(&local, p)));
        }
    }
    Ok(total.sqrt())
}

/// Norm of `u_h` itself.
pub fn fe_norm(u_h: &FeFunction<'_>, norm: Norm) -> Result<f64> {
    error_norm(u_h, |_, _| (0.0, Vector::zeros(), Matrix2::zeros()), norm)
}

/// `‖div_h u_h‖_{L2}` of a two-component function.
pub fn div_norm(u_h: &FeFunction<'_>) -> Result<f64> {
    let space = u_h.space();
    let mesh = space.mesh();
    let mut total = 0.0;
    for c in 0..mesh.n_cells() {
        let rule = cell_rule(mesh, c, 2)?;
        let (u0, u1) = (u_h.local_coeffs(c, 0), u_h.local_coeffs(c, 1));
        let basis = space.basis(c);
        total += rule.integrate(|p| {
            let d = basis.combine(&u0, p).1.x + basis.combine(&u1, p).1.y;
            d * d
        });
    }
    Ok(total.sqrt())
}

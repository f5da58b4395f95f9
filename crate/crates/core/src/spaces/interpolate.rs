//! Canonical interpolation operators and the L2 pressure projection.

use nalgebra::{DMatrix, DVector, Vector2};

use super::function::{FeFunction, FeSpace};
use crate::elements::quadrature::{cell_rule, edge_rule, over_integration_degree};
use crate::elements::step2_matrix;
use crate::error::{Error, Result};
use crate::mesh::{CellKind, Mesh};
use crate::{Point, Vector};

fn edge_mean(mesh: &Mesh, e: usize, f: impl Fn(Point) -> f64) -> Result<f64> {
    let [a, b] = mesh.edge(e).vertices;
    let rule = edge_rule(mesh.vertex(a), mesh.vertex(b), over_integration_degree())?;
    Ok(rule.integrate(f) / rule.total_weight())
}

fn cell_mean(mesh: &Mesh, c: usize, f: impl Fn(Point) -> f64) -> Result<f64> {
    let rule = cell_rule(mesh, c, over_integration_degree())?;
    Ok(rule.integrate(f) / rule.total_weight())
}

fn expect_kind(space: &FeSpace<'_>, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "{what} requires a different space, got {}",
            space.kind().name()
        )))
    }
}

/// Edge and cell means of `w`.
pub fn interpolate_qltz_scalar<'a>(
    space: &'a FeSpace<'a>,
    w: impl Fn(Point) -> f64,
) -> Result<FeFunction<'a>> {
    expect_kind(space, space.kind().is_qltz() && space.components() == 1, "scalar QLTZ interpolation")?;
    let mesh = space.mesh();
    let map = space.dofmap();
    let mut out = FeFunction::zeros(space);
    let coeffs = out.coeffs_mut();
    for e in 0..mesh.n_edges() {
        if let Some(d) = map.edge_dof(e) {
            coeffs[d] = edge_mean(mesh, e, &w)?;
        }
    }
    for c in 0..mesh.n_cells() {
        if let Some(&d) = map.cell_entity_dofs(c).first() {
            coeffs[d] = cell_mean(mesh, c, &w)?;
        }
    }
    Ok(out)
}

/// Divergence-preserving vector interpolant: edge means componentwise, then
/// on each quadrilateral the two cell-bubble coefficients are chosen so that
/// `∫_Q div(Πw) q = ∫_Q div(w) q` for `q ∈ {1, xi, eta}`.
pub fn interpolate_qltz_vector<'a>(
    space: &'a FeSpace<'a>,
    w: impl Fn(Point) -> Vector,
) -> Result<FeFunction<'a>> {
    expect_kind(space, space.kind().is_qltz() && space.components() == 2, "vector QLTZ interpolation")?;
    let mesh = space.mesh();
    let map = space.dofmap();
    let n = map.n_scalar();
    let means: Vec<Vector> = (0..mesh.n_edges())
        .map(|e| Ok(Vector::new(edge_mean(mesh, e, |p| w(p).x)?, edge_mean(mesh, e, |p| w(p).y)?)))
        .collect::<Result<_>>()?;

    let mut coeffs = vec![0.0; map.ndofs()];
    for (e, m) in means.iter().enumerate() {
        if let Some(d) = map.edge_dof(e) {
            coeffs[d] = m.x;
            coeffs[n + d] = m.y;
        }
    }

    let degree = over_integration_degree();
    for (c, cell) in mesh.cells().iter().enumerate() {
        if cell.kind != CellKind::Quad {
            continue;
        }
        let frame = mesh.frame(c).unwrap();
        let basis = space.basis(c);
        let step2 = step2_matrix(frame)?;
        // gradients of the tests eta and xi
        let coords = basis.coords();
        let tests = [
            (coords.grad_to_physical(Vector::new(0.0, 1.0)), 1usize),
            (coords.grad_to_physical(Vector::new(1.0, 0.0)), 0usize),
        ];
        let q_of = |p: Point, which: usize| {
            let u = coords.to_local(p);
            u[which]
        };

        // ∫ div w q = Σ_e ∫_e (w·n) q - ∫_Q w·∇q
        let mut rhs = Vector2::zeros();
        for (row, &(grad_q, which)) in tests.iter().enumerate() {
            let mut total = 0.0;
            for i in 0..4 {
                let (a, b) = mesh.cell_edge_points(c, i);
                let t = (b - a).normalize();
                let normal = Vector::new(t.y, -t.x);
                total += edge_rule(a, b, degree)?.integrate(|p| w(p).dot(&normal) * q_of(p, which));
            }
            total -= cell_rule(mesh, c, degree)?.integrate(|p| w(p).dot(&grad_q));
            rhs[row] = total;
        }

        // subtract the part already carried by the edge functions
        let local: Vec<[f64; 5]> = (0..2)
            .map(|k| {
                let mut l = [0.0; 5];
                for i in 0..4 {
                    l[i + 1] = means[cell.edges[i]][k];
                }
                l
            })
            .collect();
        let rule = cell_rule(mesh, c, 2)?;
        for (row, &(_, which)) in tests.iter().enumerate() {
            rhs[row] -= rule.integrate(|p| {
                let gx = basis.combine(&local[0], p).1.x;
                let gy = basis.combine(&local[1], p).1.y;
                (gx + gy) * q_of(p, which)
            });
        }

        let sol = step2
            .matrix
            .lu()
            .solve(&rhs)
            .ok_or(Error::SingularStep2(step2.det))?;
        let d = map.cell_entity_dofs(c)[0];
        coeffs[d] = sol[0];
        coeffs[n + d] = sol[1];
    }
    Ok(FeFunction::new(space, coeffs))
}

/// Vertex values and edge means of `∂φ/∂n_e`; `phi` returns value and gradient.
pub fn interpolate_morley<'a>(
    space: &'a FeSpace<'a>,
    phi: impl Fn(Point) -> (f64, Vector),
) -> Result<FeFunction<'a>> {
    expect_kind(space, space.kind().is_morley() && space.components() == 1, "Morley interpolation")?;
    let mesh = space.mesh();
    let map = space.dofmap();
    let mut out = FeFunction::zeros(space);
    let coeffs = out.coeffs_mut();
    for e in 0..mesh.n_edges() {
        if let Some(d) = map.edge_dof(e) {
            let n = mesh.edge(e).normal;
            coeffs[d] = edge_mean(mesh, e, |p| phi(p).1.dot(&n))?;
        }
    }
    for v in 0..mesh.n_vertices() {
        if let Some(d) = map.vertex_dof(v) {
            coeffs[d] = phi(mesh.vertex(v)).0;
        }
    }
    Ok(out)
}

/// Cellwise L2 projection; for the zero-mean space the global mean is removed.
pub fn l2_project_pressure<'a>(
    space: &'a FeSpace<'a>,
    q: impl Fn(Point) -> f64,
) -> Result<FeFunction<'a>> {
    l2_project_pressure_cellwise(space, |_, p| q(p))
}

/// As [`l2_project_pressure`] for data given cell by cell, such as broken
/// derivatives of a finite element function.
pub fn l2_project_pressure_cellwise<'a>(
    space: &'a FeSpace<'a>,
    q: impl Fn(usize, Point) -> f64,
) -> Result<FeFunction<'a>> {
    expect_kind(space, space.kind().is_pressure() && space.components() == 1, "pressure projection")?;
    let mesh = space.mesh();
    let map = space.dofmap();
    let mut coeffs = vec![0.0; map.ndofs()];
    let degree = over_integration_degree();
    let mut integral = 0.0;
    let mut area = 0.0;
    for c in 0..mesh.n_cells() {
        let basis = space.basis(c);
        let nb = basis.dim();
        let rule = cell_rule(mesh, c, degree)?;
        let mut mass = DMatrix::zeros(nb, nb);
        let mut rhs = DVector::zeros(nb);
        for (&p, &wt) in rule.points.iter().zip(&rule.weights) {
            let v = basis.values(p);
            let qp = q(c, p);
            for i in 0..nb {
                rhs[i] += wt * qp * v[i];
                for j in 0..nb {
                    mass[(i, j)] += wt * v[i] * v[j];
                }
            }
        }
        let sol = mass.cholesky().ok_or(Error::NotPositiveDefinite)?.solve(&rhs);
        // the first basis function is the constant
        integral += rhs[0];
        area += rule.total_weight();
        for (i, d) in map.cell_entity_dofs(c).iter().enumerate() {
            coeffs[*d] = sol[i];
        }
    }
    if map.zero_mean() {
        let mean = integral / area;
        for c in 0..mesh.n_cells() {
            coeffs[map.cell_entity_dofs(c)[0]] -= mean;
        }
    }
    Ok(FeFunction::new(space, coeffs))
}

//! Bilinear forms and load vectors, assembled cell by cell.

use nalgebra::DMatrix;

use super::sparse::SparseMatrix;
use crate::elements::quadrature::{cell_rule, over_integration_degree};
use crate::elements::BasisEval;
use crate::error::{Error, Result};
use crate::spaces::FeSpace;
use crate::{Point, Vector};

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Config(msg.to_string()))
    }
}

/// Assembles `Σ_K ∫_K a(φ_j, φ_i)` for a scalar local form, applied
/// blockwise to every component.
fn assemble_blockwise(
    space: &FeSpace<'_>,
    degree: usize,
    form: impl Fn(&BasisEval, usize, usize) -> f64,
) -> Result<SparseMatrix> {
    let mesh = space.mesh();
    let map = space.dofmap();
    let mut trips = Vec::new();
    for c in 0..mesh.n_cells() {
        let basis = space.basis(c);
        let nb = basis.dim();
        let rule = cell_rule(mesh, c, degree)?;
        let mut local = DMatrix::zeros(nb, nb);
        for (&p, &w) in rule.points.iter().zip(&rule.weights) {
            let e = basis.eval(p);
            for i in 0..nb {
                for j in 0..nb {
                    local[(i, j)] += w * form(&e, i, j);
                }
            }
        }
        for k in 0..map.components() {
            for i in 0..nb {
                let Some(gi) = map.global(c, i, k) else { continue };
                for j in 0..nb {
                    if let Some(gj) = map.global(c, j, k) {
                        trips.push((gi, gj, local[(i, j)]));
                    }
                }
            }
        }
    }
    Ok(SparseMatrix::from_triplets(map.ndofs(), map.ndofs(), trips))
}

/// `Σ_K ∫_K ∇φ_i · ∇φ_j`, blockwise for vector spaces.
pub fn assemble_stiffness(space: &FeSpace<'_>) -> Result<SparseMatrix> {
    require(space.kind().is_qltz(), "stiffness needs a QLTZ-family space")?;
    assemble_blockwise(space, 2, |e, i, j| e.grads[i].dot(&e.grads[j]))
}

/// `Σ_K ∫_K ∇²φ_i : ∇²φ_j`.
pub fn assemble_hessian(space: &FeSpace<'_>) -> Result<SparseMatrix> {
    require(space.kind().is_morley(), "Hessian form needs a Morley-family space")?;
    assemble_blockwise(space, 2, |e, i, j| e.hessians[i].component_mul(&e.hessians[j]).sum())
}

/// `Σ_K ∫_K φ_i φ_j`.
pub fn assemble_mass(space: &FeSpace<'_>) -> Result<SparseMatrix> {
    let degree = 2 * (0..space.mesh().n_cells()).map(|c| space.basis(c).degree()).max().unwrap_or(0);
    assemble_blockwise(space, degree, |e, i, j| e.values[i] * e.values[j])
}

/// Pressure mass matrix, block diagonal.
pub fn assemble_pressure_mass(pressure: &FeSpace<'_>) -> Result<SparseMatrix> {
    require(pressure.kind().is_pressure(), "pressure mass needs a pressure space")?;
    assemble_mass(pressure)
}

/// `∫_Ω ψ_i` for every pressure basis function.
pub fn assemble_pressure_mean(pressure: &FeSpace<'_>) -> Result<Vec<f64>> {
    assemble_load(pressure, |_| 1.0)
}

/// `B[q, v] = Σ_K ∫_K div φ_v ψ_q`; rows are pressure DOFs.
pub fn assemble_div(velocity: &FeSpace<'_>, pressure: &FeSpace<'_>) -> Result<SparseMatrix> {
    require(
        velocity.kind().is_qltz() && velocity.components() == 2,
        "divergence needs a vector QLTZ space",
    )?;
    require(pressure.kind().is_pressure(), "divergence needs a pressure space")?;
    if !velocity.same_mesh(pressure) {
        return Err(Error::IncompatibleMesh("velocity and pressure on different meshes".into()));
    }
    let mesh = velocity.mesh();
    let (vmap, pmap) = (velocity.dofmap(), pressure.dofmap());
    let mut trips = Vec::new();
    for c in 0..mesh.n_cells() {
        let (vb, pb) = (velocity.basis(c), pressure.basis(c));
        let rule = cell_rule(mesh, c, 2)?;
        let mut local = vec![DMatrix::zeros(pb.dim(), vb.dim()); 2];
        for (&p, &w) in rule.points.iter().zip(&rule.weights) {
            let ve = vb.eval(p);
            let pv = pb.values(p);
            for (i, q) in pv.iter().enumerate() {
                for (j, g) in ve.grads.iter().enumerate() {
                    local[0][(i, j)] += w * q * g.x;
                    local[1][(i, j)] += w * q * g.y;
                }
            }
        }
        for i in 0..pb.dim() {
            let Some(gi) = pmap.global(c, i, 0) else { continue };
            for (k, block) in local.iter().enumerate() {
                for j in 0..vb.dim() {
                    if let Some(gj) = vmap.global(c, j, k) {
                        trips.push((gi, gj, block[(i, j)]));
                    }
                }
            }
        }
    }
    Ok(SparseMatrix::from_triplets(pmap.ndofs(), vmap.ndofs(), trips))
}

/// `(f, φ_i)` for a scalar space, integrated at the over-integration degree.
pub fn assemble_load(space: &FeSpace<'_>, f: impl Fn(Point) -> f64) -> Result<Vec<f64>> {
    require(space.components() == 1, "scalar load needs a scalar space")?;
    assemble_vector_load_impl(space, |p| Vector::new(f(p), 0.0))
}

/// `(f, φ_i)` for a two-component space.
pub fn assemble_vector_load(space: &FeSpace<'_>, f: impl Fn(Point) -> Vector) -> Result<Vec<f64>> {
    require(space.components() == 2, "vector load needs a vector space")?;
    assemble_vector_load_impl(space, f)
}

fn assemble_vector_load_impl(space: &FeSpace<'_>, f: impl Fn(Point) -> Vector) -> Result<Vec<f64>> {
    let mesh = space.mesh();
    let map = space.dofmap();
    let mut b = vec![0.0; map.ndofs()];
    let degree = over_integration_degree().max(6);
    for c in 0..mesh.n_cells() {
        let basis = space.basis(c);
        let nb = basis.dim();
        let rule = cell_rule(mesh, c, degree)?;
        let mut local = [vec![0.0; nb], vec![0.0; nb]];
        for (&p, &w) in rule.points.iter().zip(&rule.weights) {
            let v = basis.values(p);
            let fp = f(p);
            for i in 0..nb {
                local[0][i] += w * fp.x * v[i];
                local[1][i] += w * fp.y * v[i];
            }
        }
        for (k, lk) in local.iter().enumerate().take(map.components()) {
            for (i, val) in lk.iter().enumerate() {
                if let Some(g) = map.global(c, i, k) {
                    b[g] += val;
                }
            }
        }
    }
    Ok(b)
}

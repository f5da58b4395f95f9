//! Finite element spaces on a mesh and functions in them.

use nalgebra::Matrix2;

use super::dofmap::{DofMap, SpaceKind};
use crate::elements::quadrature::cell_rule;
use crate::elements::{
    pressure_p0_basis, pressure_p1_basis, qltz_basis, quad_morley_basis_with_normals,
    tri_morley_basis_with_normals, tri_p1nc_basis, LocalBasis,
};
use crate::error::{Error, Result};
use crate::mesh::{CellKind, Mesh};
use crate::{Point, Vector};

/// A DOF map together with the local basis of every cell.
#[derive(Debug, Clone)]
pub struct FeSpace<'m> {
    mesh: &'m Mesh,
    dofmap: DofMap,
    bases: Vec<LocalBasis>,
}

fn triangle(pts: &[Point]) -> [Point; 3] {
    [pts[0], pts[1], pts[2]]
}

/// Local basis of `kind` on cell `c`. Morley edge DOFs use the global edge normals.
pub fn cell_basis(mesh: &Mesh, c: usize, kind: SpaceKind) -> Result<LocalBasis> {
    let cell = mesh.cell(c);
    let pts = mesh.cell_points(c);
    let basis = match (kind.unconstrained(), cell.kind) {
        (SpaceKind::Qltz, CellKind::Quad) => qltz_basis(mesh.frame(c).unwrap()),
        (SpaceKind::Qltz, CellKind::Triangle) => tri_p1nc_basis(triangle(&pts))?,
        (SpaceKind::Morley, kind) => {
            let normals: Vec<Vector> = cell.edges.iter().map(|&e| mesh.edge(e).normal).collect();
            match kind {
                CellKind::Quad => quad_morley_basis_with_normals(mesh.frame(c).unwrap(), &normals)?,
                CellKind::Triangle => tri_morley_basis_with_normals(triangle(&pts), &normals)?,
            }
        }
        (_, CellKind::Quad) => pressure_p1_basis(mesh.frame(c).unwrap()),
        (_, CellKind::Triangle) => pressure_p0_basis(triangle(&pts))?,
    };
    Ok(basis)
}

impl<'m> FeSpace<'m> {
    pub fn new(mesh: &'m Mesh, kind: SpaceKind) -> Result<Self> {
        Self::from_dofmap(mesh, DofMap::build(mesh, kind))
    }

    /// Two-component space.
    pub fn vector(mesh: &'m Mesh, kind: SpaceKind) -> Result<Self> {
        Self::from_dofmap(mesh, DofMap::vector(mesh, kind))
    }

    pub fn from_dofmap(mesh: &'m Mesh, dofmap: DofMap) -> Result<Self> {
        if dofmap.n_cells() != mesh.n_cells() {
            return Err(Error::IncompatibleMesh(format!(
                "DOF map has {} cells, mesh has {}",
                dofmap.n_cells(),
                mesh.n_cells()
            )));
        }
        let bases = (0..mesh.n_cells())
            .map(|c| cell_basis(mesh, c, dofmap.kind()))
            .collect::<Result<_>>()?;
        Ok(Self { mesh, dofmap, bases })
    }

    pub fn mesh(&self) -> &'m Mesh {
        self.mesh
    }

    pub fn dofmap(&self) -> &DofMap {
        &self.dofmap
    }

    pub fn kind(&self) -> SpaceKind {
        self.dofmap.kind()
    }

    pub fn basis(&self, c: usize) -> &LocalBasis {
        &self.bases[c]
    }

    pub fn ndofs(&self) -> usize {
        self.dofmap.ndofs()
    }

    pub fn components(&self) -> usize {
        self.dofmap.components()
    }

    /// Coefficients of the constant function 1 in a pressure space (the
    /// first local basis function of every cell is the constant).
    pub fn pressure_constant(&self) -> Vec<f64> {
        assert!(self.kind().is_pressure(), "not a pressure space");
        let mut c = vec![0.0; self.ndofs()];
        for cell in 0..self.mesh.n_cells() {
            c[self.dofmap.cell_entity_dofs(cell)[0]] = 1.0;
        }
        c
    }

    /// Whether this space and `other` live on the same mesh object.
    pub fn same_mesh(&self, other: &FeSpace<'_>) -> bool {
        std::ptr::eq(self.mesh, other.mesh)
    }
}

/// Coefficients over a space; evaluation is cellwise with broken derivatives.
#[derive(Debug, Clone)]
pub struct FeFunction<'a> {
    space: &'a FeSpace<'a>,
    coeffs: Vec<f64>,
}

/// Value, gradient and Hessian of one component at a point.
pub type Jet = (f64, Vector, Matrix2<f64>);

impl<'a> FeFunction<'a> {
    pub fn new(space: &'a FeSpace<'a>, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), space.ndofs(), "coefficient length mismatch");
        Self { space, coeffs }
    }

    pub fn zeros(space: &'a FeSpace<'a>) -> Self {
        Self::new(space, vec![0.0; space.ndofs()])
    }

    pub fn space(&self) -> &'a FeSpace<'a> {
        self.space
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    /// Local coefficients of component `k` on cell `c` (zero for constrained DOFs).
    pub fn local_coeffs(&self, c: usize, k: usize) -> Vec<f64> {
        let map = self.space.dofmap();
        (0..map.cell_dofs(c).len())
            .map(|i| map.global(c, i, k).map_or(0.0, |g| self.coeffs[g]))
            .collect()
    }

    /// Evaluation without the point-in-cell check.
    pub fn jet_unchecked(&self, c: usize, p: Point, k: usize) -> Jet {
        self.space.basis(c).combine(&self.local_coeffs(c, k), p)
    }

    pub fn jet(&self, c: usize, p: Point, k: usize) -> Result<Jet> {
        if !self.space.mesh().contains(c, p) {
            return Err(Error::PointOutsideCell { cell: c, x: p.x, y: p.y });
        }
        Ok(self.jet_unchecked(c, p, k))
    }

    pub fn value(&self, c: usize, p: Point) -> Result<f64> {
        Ok(self.jet(c, p, 0)?.0)
    }

    pub fn vector_value(&self, c: usize, p: Point) -> Result<Vector> {
        Ok(Vector::new(self.jet(c, p, 0)?.0, self.jet(c, p, 1)?.0))
    }

    /// Broken gradient of component `k`.
    pub fn grad(&self, c: usize, p: Point, k: usize) -> Result<Vector> {
        Ok(self.jet(c, p, k)?.1)
    }

    /// Broken divergence of a two-component function.
    pub fn div(&self, c: usize, p: Point) -> Result<f64> {
        Ok(self.jet(c, p, 0)?.1.x + self.jet(c, p, 1)?.1.y)
    }

    /// Broken curl `(dy g, -dx g)` of a scalar function.
    pub fn curl(&self, c: usize, p: Point) -> Result<Vector> {
        let g = self.jet(c, p, 0)?.1;
        Ok(Vector::new(g.y, -g.x))
    }

    /// Broken rotation `dx v2 - dy v1` of a two-component function.
    pub fn rot(&self, c: usize, p: Point) -> Result<f64> {
        Ok(self.jet(c, p, 1)?.1.x - self.jet(c, p, 0)?.1.y)
    }

    pub fn hessian(&self, c: usize, p: Point, k: usize) -> Result<Matrix2<f64>> {
        Ok(self.jet(c, p, k)?.2)
    }

    /// `∫_Ω` of component `k`.
    pub fn integral(&self, k: usize) -> Result<f64> {
        let mut total = 0.0;
        for c in 0..self.space.mesh().n_cells() {
            let rule = cell_rule(self.space.mesh(), c, self.space.basis(c).degree())?;
            total += rule.integrate(|p| self.jet_unchecked(c, p, k).0);
        }
        Ok(total)
    }
}

//! Global DOF numbering: edge DOFs by edge id, then cell DOFs by cell id,
//! then vertex DOFs by vertex id. Homogeneous boundary conditions remove the
//! constrained DOFs from the numbering.

use crate::mesh::{CellKind, Mesh};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceKind {
    /// QLTZ on quadrilaterals, nonconforming P1 on triangles.
    Qltz,
    /// `Qltz` with vanishing boundary edge means.
    Qltz0,
    /// Morley on quadrilaterals and triangles.
    Morley,
    /// `Morley` with vanishing boundary vertex values and normal derivatives.
    Morley0,
    /// Discontinuous P1 on quadrilaterals, P0 on triangles.
    Pressure,
    /// `Pressure` restricted to zero mean.
    Pressure0,
}

impl SpaceKind {
    pub fn is_constrained(self) -> bool {
        matches!(self, SpaceKind::Qltz0 | SpaceKind::Morley0 | SpaceKind::Pressure0)
    }

    /// The same family without boundary or mean constraints.
    pub fn unconstrained(self) -> SpaceKind {
        match self {
            SpaceKind::Qltz | SpaceKind::Qltz0 => SpaceKind::Qltz,
            SpaceKind::Morley | SpaceKind::Morley0 => SpaceKind::Morley,
            SpaceKind::Pressure | SpaceKind::Pressure0 => SpaceKind::Pressure,
        }
    }

    pub fn is_qltz(self) -> bool {
        matches!(self, SpaceKind::Qltz | SpaceKind::Qltz0)
    }

    pub fn is_morley(self) -> bool {
        matches!(self, SpaceKind::Morley | SpaceKind::Morley0)
    }

    pub fn is_pressure(self) -> bool {
        matches!(self, SpaceKind::Pressure | SpaceKind::Pressure0)
    }

    pub fn name(self) -> &'static str {
        match self {
            SpaceKind::Qltz => "qltz",
            SpaceKind::Qltz0 => "qltz0",
            SpaceKind::Morley => "morley",
            SpaceKind::Morley0 => "morley0",
            SpaceKind::Pressure => "pressure",
            SpaceKind::Pressure0 => "pressure0",
        }
    }
}

impl std::str::FromStr for SpaceKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        [
            SpaceKind::Qltz,
            SpaceKind::Qltz0,
            SpaceKind::Morley,
            SpaceKind::Morley0,
            SpaceKind::Pressure,
            SpaceKind::Pressure0,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| crate::Error::Config(format!("unknown space kind '{s}'")))
    }
}

/// Local-to-global DOF tables for one space kind on one mesh.
///
/// Vector-valued maps stack the components: component `k` of scalar DOF `i`
/// is global DOF `k * n_scalar + i`.
#[derive(Debug, Clone, PartialEq)]
pub struct DofMap {
    kind: SpaceKind,
    components: usize,
    n_scalar: usize,
    n_constrained: usize,
    cell_dofs: Vec<Vec<Option<usize>>>,
    edge_dofs: Vec<Option<usize>>,
    vertex_dofs: Vec<Option<usize>>,
    cell_entity_dofs: Vec<Vec<usize>>,
}

fn pressure_count(kind: CellKind) -> usize {
    match kind {
        CellKind::Quad => 3,
        CellKind::Triangle => 1,
    }
}

impl DofMap {
    /// Scalar map.
    pub fn build(mesh: &Mesh, kind: SpaceKind) -> Self {
        Self::with_components(mesh, kind, 1)
    }

    /// Two-component map for vector fields.
    pub fn vector(mesh: &Mesh, kind: SpaceKind) -> Self {
        Self::with_components(mesh, kind, 2)
    }

    pub fn with_components(mesh: &Mesh, kind: SpaceKind, components: usize) -> Self {
        assert!(components >= 1);
        let constrained = kind.is_constrained() && !kind.is_pressure();
        let mut next = 0;
        let mut n_constrained = 0;
        let mut take = |free: bool| {
            if free {
                next += 1;
                Some(next - 1)
            } else {
                n_constrained += 1;
                None
            }
        };

        let mut edge_dofs = vec![None; mesh.n_edges()];
        if !kind.is_pressure() {
            for (e, edge) in mesh.edges().iter().enumerate() {
                edge_dofs[e] = take(!(constrained && edge.boundary));
            }
        }
        let mut cell_entity_dofs = vec![Vec::new(); mesh.n_cells()];
        for (c, cell) in mesh.cells().iter().enumerate() {
            let count = match kind.unconstrained() {
                SpaceKind::Qltz => usize::from(cell.kind == CellKind::Quad),
                SpaceKind::Pressure => pressure_count(cell.kind),
                _ => 0,
            };
            cell_entity_dofs[c] = (0..count).map(|_| take(true).unwrap()).collect();
        }
        let mut vertex_dofs = vec![None; mesh.n_vertices()];
        if kind.is_morley() {
            for (v, slot) in vertex_dofs.iter_mut().enumerate() {
                *slot = take(!(constrained && mesh.is_boundary_vertex(v)));
            }
        }

        let cell_dofs = mesh
            .cells()
            .iter()
            .enumerate()
            .map(|(c, cell)| {
                let edges = cell.edges.iter().map(|&e| edge_dofs[e]);
                let verts = cell.vertices.iter().map(|&v| vertex_dofs[v]);
                let own = cell_entity_dofs[c].iter().map(|&d| Some(d));
                match kind.unconstrained() {
                    SpaceKind::Qltz => own.chain(edges).collect(),
                    SpaceKind::Morley => verts.chain(edges).collect(),
                    _ => own.collect(),
                }
            })
            .collect();

        DofMap {
            kind,
            components,
            n_scalar: next,
            n_constrained,
            cell_dofs,
            edge_dofs,
            vertex_dofs,
            cell_entity_dofs,
        }
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Number of scalar DOFs per component.
    pub fn n_scalar(&self) -> usize {
        self.n_scalar
    }

    /// Length of a coefficient vector.
    pub fn ndofs(&self) -> usize {
        self.components * self.n_scalar
    }

    /// Dimension of the space: `ndofs` minus one for the zero-mean constraint.
    pub fn dim(&self) -> usize {
        self.ndofs() - usize::from(self.zero_mean())
    }

    pub fn zero_mean(&self) -> bool {
        self.kind == SpaceKind::Pressure0
    }

    /// Scalar DOFs removed by boundary conditions.
    pub fn n_constrained(&self) -> usize {
        self.n_constrained
    }

    /// Scalar local-to-global table of a cell; `None` marks a constrained DOF.
    pub fn cell_dofs(&self, c: usize) -> &[Option<usize>] {
        &self.cell_dofs[c]
    }

    /// Global DOF of local DOF `i`, component `k`.
    pub fn global(&self, c: usize, i: usize, k: usize) -> Option<usize> {
        self.cell_dofs[c][i].map(|d| k * self.n_scalar + d)
    }

    pub fn edge_dof(&self, e: usize) -> Option<usize> {
        self.edge_dofs[e]
    }

    pub fn vertex_dof(&self, v: usize) -> Option<usize> {
        self.vertex_dofs[v]
    }

    pub fn cell_entity_dofs(&self, c: usize) -> &[usize] {
        &self.cell_entity_dofs[c]
    }

    pub fn n_cells(&self) -> usize {
        self.cell_dofs.len()
    }
}

//! Triangle/quadrilateral meshes: topology, orientation and counts.

mod frame;
mod generate;
mod io;

pub use frame::{cross, signed_area, QuadFrame, EPS_AREA, EPS_CONVEX};
pub use generate::{
    generate_mixed, generate_mixed_perturbed, generate_perturbed_quads, generate_structured_quads,
    MixedPattern, PERTURBATION_CLAMP,
};
pub use io::{format_mesh, parse_mesh, read_mesh, write_mesh};

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::{Point, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CellKind {
    Triangle,
    Quad,
}

impl CellKind {
    pub fn n_vertices(self) -> usize {
        match self {
            CellKind::Triangle => 3,
            CellKind::Quad => 4,
        }
    }
}

/// A cell with counterclockwise vertices. Local edge `i` joins local
/// vertices `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub kind: CellKind,
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    /// `+1` if the cell traverses the edge along its stored tangent.
    pub edge_signs: Vec<i8>,
}

/// An edge oriented from its lower- to its higher-indexed vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub vertices: [usize; 2],
    pub cells: Vec<usize>,
    pub boundary: bool,
    pub tangent: Vector,
    /// Tangent rotated by -90 degrees, so that `n x tau > 0`.
    pub normal: Vector,
    pub length: f64,
}

/// Combinatorial counts of a mesh.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MeshCounts {
    pub cells: usize,
    pub vertices: usize,
    pub interior_vertices: usize,
    pub boundary_vertices: usize,
    pub edges: usize,
    pub interior_edges: usize,
    pub boundary_edges: usize,
    pub quads: usize,
    pub triangles: usize,
}

impl MeshCounts {
    /// `F + X = E + 1`, valid for simply connected planar meshes.
    pub fn euler_holds(&self) -> bool {
        self.cells + self.vertices == self.edges + 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    vertices: Vec<Point>,
    cells: Vec<Cell>,
    edges: Vec<Edge>,
    boundary_vertex: Vec<bool>,
    frames: Vec<Option<QuadFrame>>,
    counts: MeshCounts,
}

impl Mesh {
    /// Builds a mesh from vertex coordinates and counterclockwise cell
    /// connectivity. Edges are numbered by their sorted vertex pair.
    pub fn new(vertices: Vec<Point>, cells: Vec<(CellKind, Vec<usize>)>) -> Result<Self> {
        let nv = vertices.len();
        let mut frames = Vec::with_capacity(cells.len());
        for (c, (kind, vs)) in cells.iter().enumerate() {
            if vs.len() != kind.n_vertices() {
                return Err(Error::InvalidTopology(format!(
                    "cell {c} has {} vertices, expected {}",
                    vs.len(),
                    kind.n_vertices()
                )));
            }
            if let Some(&bad) = vs.iter().find(|&&v| v >= nv) {
                return Err(Error::InvalidTopology(format!(
                    "cell {c} references vertex {bad} but only {nv} vertices exist"
                )));
            }
            let pts: Vec<Point> = vs.iter().map(|&v| vertices[v]).collect();
            match kind {
                CellKind::Triangle => {
                    check_triangle(&pts).map_err(|e| attach_cell(e, c))?;
                    frames.push(None);
                }
                CellKind::Quad => {
                    let frame = QuadFrame::new([pts[0], pts[1], pts[2], pts[3]])
                        .map_err(|e| attach_cell(e, c))?;
                    frames.push(Some(frame));
                }
            }
        }

        let mut edge_index: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
        for (c, (_, vs)) in cells.iter().enumerate() {
            let n = vs.len();
            for i in 0..n {
                let (a, b) = (vs[i], vs[(i + 1) % n]);
                if a == b {
                    return Err(Error::InvalidTopology(format!(
                        "cell {c} repeats vertex {a}"
                    )));
                }
                edge_index
                    .entry((a.min(b), a.max(b)))
                    .or_default()
                    .push((c, i));
            }
        }

        let mut edges = Vec::with_capacity(edge_index.len());
        let mut cell_edges: Vec<Vec<usize>> = cells.iter().map(|(_, vs)| vec![0; vs.len()]).collect();
        let mut cell_signs: Vec<Vec<i8>> = cells.iter().map(|(_, vs)| vec![0; vs.len()]).collect();
        let mut boundary_vertex = vec![false; nv];
        for (e, ((lo, hi), incident)) in edge_index.into_iter().enumerate() {
            if incident.len() > 2 {
                return Err(Error::InvalidTopology(format!(
                    "edge ({lo}, {hi}) is shared by {} cells",
                    incident.len()
                )));
            }
            let delta = vertices[hi] - vertices[lo];
            let length = delta.norm();
            let tangent = delta / length;
            let normal = Vector::new(tangent.y, -tangent.x);
            let boundary = incident.len() == 1;
            if boundary {
                boundary_vertex[lo] = true;
                boundary_vertex[hi] = true;
            }
            let mut signs = Vec::with_capacity(2);
            for &(c, i) in &incident {
                let start = cells[c].1[i];
                let sign = if start == lo { 1 } else { -1 };
                signs.push(sign);
                cell_edges[c][i] = e;
                cell_signs[c][i] = sign;
            }
            if signs.len() == 2 && signs[0] == signs[1] {
                return Err(Error::InvalidTopology(format!(
                    "cells {} and {} traverse edge ({lo}, {hi}) in the same direction",
                    incident[0].0, incident[1].0
                )));
            }
            edges.push(Edge {
                vertices: [lo, hi],
                cells: incident.iter().map(|&(c, _)| c).collect(),
                boundary,
                tangent,
                normal,
                length,
            });
        }

        let cells: Vec<Cell> = cells
            .into_iter()
            .zip(cell_edges.into_iter().zip(cell_signs))
            .map(|((kind, vertices), (edges, edge_signs))| Cell {
                kind,
                vertices,
                edges,
                edge_signs,
            })
            .collect();

        let used: Vec<bool> = {
            let mut used = vec![false; nv];
            for c in &cells {
                for &v in &c.vertices {
                    used[v] = true;
                }
            }
            used
        };
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::InvalidTopology(format!("vertex {v} is not used by any cell")));
        }

        let boundary_edges = edges.iter().filter(|e| e.boundary).count();
        let boundary_vertices = boundary_vertex.iter().filter(|&&b| b).count();
        let quads = cells.iter().filter(|c| c.kind == CellKind::Quad).count();
        let counts = MeshCounts {
            cells: cells.len(),
            vertices: nv,
            interior_vertices: nv - boundary_vertices,
            boundary_vertices,
            edges: edges.len(),
            interior_edges: edges.len() - boundary_edges,
            boundary_edges,
            quads,
            triangles: cells.len() - quads,
        };

        Ok(Self {
            vertices,
            cells,
            edges,
            boundary_vertex,
            frames,
            counts,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> Point {
        self.vertices[v]
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, c: usize) -> &Cell {
        &self.cells[c]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn counts(&self) -> MeshCounts {
        self.counts
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.boundary_vertex[v]
    }

    /// Frame of a quadrilateral cell, `None` for triangles.
    pub fn frame(&self, c: usize) -> Option<&QuadFrame> {
        self.frames[c].as_ref()
    }

    pub fn cell_points(&self, c: usize) -> Vec<Point> {
        self.cells[c].vertices.iter().map(|&v| self.vertices[v]).collect()
    }

    /// Endpoints of local edge `i` of cell `c`, in the cell's traversal order.
    pub fn cell_edge_points(&self, c: usize, i: usize) -> (Point, Point) {
        let vs = &self.cells[c].vertices;
        (self.vertices[vs[i]], self.vertices[vs[(i + 1) % vs.len()]])
    }

    pub fn cell_area(&self, c: usize) -> f64 {
        signed_area(&self.cell_points(c))
    }

    /// Largest cell diameter.
    pub fn h_max(&self) -> f64 {
        (0..self.n_cells())
            .map(|c| {
                let pts = self.cell_points(c);
                let mut d: f64 = 0.0;
                for a in &pts {
                    for b in &pts {
                        d = d.max((a - b).norm());
                    }
                }
                d
            })
            .fold(0.0, f64::max)
    }

    /// Whether `p` lies in the closed cell, up to a relative tolerance.
    pub fn contains(&self, c: usize, p: Point) -> bool {
        let pts = self.cell_points(c);
        let n = pts.len();
        let scale = (pts[0] - pts[n / 2]).norm().max(f64::MIN_POSITIVE);
        (0..n).all(|i| {
            let a = pts[i];
            let b = pts[(i + 1) % n];
            cross(b - a, p - a) >= -1e-10 * scale * scale
        })
    }

    /// Largest shape regularity indicator over quadrilateral cells.
    pub fn max_shape_regularity(&self) -> Option<f64> {
        self.frames
            .iter()
            .flatten()
            .map(|f| f.shape_regularity())
            .fold(None, |acc, r| Some(acc.map_or(r, |a: f64| a.max(r))))
    }

    /// Largest `|alpha| + |beta|` over quadrilateral cells.
    pub fn max_distortion(&self) -> Option<f64> {
        self.frames
            .iter()
            .flatten()
            .map(|f| f.alpha.abs() + f.beta.abs())
            .fold(None, |acc, r| Some(acc.map_or(r, |a: f64| a.max(r))))
    }

    /// Raw `(kind, vertices)` connectivity, as accepted by [`Mesh::new`].
    pub fn connectivity(&self) -> Vec<(CellKind, Vec<usize>)> {
        self.cells
            .iter()
            .map(|c| (c.kind, c.vertices.clone()))
            .collect()
    }
}

fn attach_cell(e: Error, c: usize) -> Error {
    match e {
        Error::NonConvex { measure, .. } => Error::NonConvex {
            cell: Some(c),
            measure,
        },
        Error::Degenerate { .. } => Error::Degenerate { cell: Some(c) },
        Error::BadOrientation { .. } => Error::BadOrientation { cell: Some(c) },
        other => other,
    }
}

/// Rejects degenerate and clockwise triangles.
pub fn check_triangle(pts: &[Point]) -> Result<()> {
    let area = signed_area(pts);
    let scale = (pts[1] - pts[0])
        .norm_squared()
        .max((pts[2] - pts[1]).norm_squared())
        .max((pts[0] - pts[2]).norm_squared());
    if area.abs() <= EPS_AREA * scale {
        return Err(Error::Degenerate { cell: None });
    }
    if area < 0.0 {
        return Err(Error::BadOrientation { cell: None });
    }
    Ok(())
}

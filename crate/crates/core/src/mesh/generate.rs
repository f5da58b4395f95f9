//! Structured, perturbed and mixed triangle/quadrilateral meshes of the unit square.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CellKind, Mesh, QuadFrame};
use crate::error::{Error, Result};
use crate::Point;

/// Upper bound on `|alpha| + |beta|` accepted by the perturbed generator.
pub const PERTURBATION_CLAMP: f64 = 0.8;
const MAX_ATTEMPTS: usize = 100;
const MAX_MAGNITUDE: f64 = 0.3;

/// Which cells of an `n x n` grid are split into two triangles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MixedPattern {
    /// No cell is split.
    None,
    /// Every cell is split.
    All,
    /// Cells with even `i + j` are split.
    Checkerboard,
    /// Cells in the left half of the grid (`i < ceil(n / 2)`) are split.
    HalfSplit,
}

impl MixedPattern {
    fn splits(self, i: usize, j: usize, n: usize) -> bool {
        match self {
            MixedPattern::None => false,
            MixedPattern::All => true,
            MixedPattern::Checkerboard => (i + j).is_multiple_of(2),
            MixedPattern::HalfSplit => i < n.div_ceil(2),
        }
    }
}

impl std::str::FromStr for MixedPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(MixedPattern::None),
            "all" => Ok(MixedPattern::All),
            "checkerboard" => Ok(MixedPattern::Checkerboard),
            "diagonal-split-half" | "half" => Ok(MixedPattern::HalfSplit),
            other => Err(Error::Config(format!("unknown mixed pattern '{other}'"))),
        }
    }
}

fn grid_vertices(n: usize) -> Vec<Point> {
    let mut v = Vec::with_capacity((n + 1) * (n + 1));
    for j in 0..=n {
        for i in 0..=n {
            v.push(Point::new(i as f64 / n as f64, j as f64 / n as f64));
        }
    }
    v
}

fn grid_quads(n: usize) -> Vec<[usize; 4]> {
    let id = |i: usize, j: usize| j * (n + 1) + i;
    let mut cells = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            cells.push([id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    cells
}

/// `n x n` uniform squares on the unit square.
pub fn generate_structured_quads(n: usize) -> Mesh {
    assert!(n >= 1, "grid size must be positive");
    let cells = grid_quads(n)
        .into_iter()
        .map(|q| (CellKind::Quad, q.to_vec()))
        .collect();
    Mesh::new(grid_vertices(n), cells).expect("structured grid is valid")
}

/// Structured grid with interior vertices displaced by up to
/// `magnitude * h` in each coordinate. Every quadrilateral keeps
/// `|alpha| + |beta| <= PERTURBATION_CLAMP`; boundary vertices stay fixed.
pub fn generate_perturbed_quads(n: usize, magnitude: f64, seed: u64) -> Result<Mesh> {
    generate_mixed_perturbed(n, MixedPattern::None, magnitude, seed)
}

/// Structured grid with the cells selected by `pattern` split along the
/// diagonal joining their lower-left and upper-right corners.
pub fn generate_mixed(n: usize, pattern: MixedPattern) -> Mesh {
    generate_mixed_perturbed(n, pattern, 0.0, 0).expect("unperturbed grid is valid")
}

/// Perturbs the quadrilateral grid first, then splits the selected cells.
pub fn generate_mixed_perturbed(
    n: usize,
    pattern: MixedPattern,
    magnitude: f64,
    seed: u64,
) -> Result<Mesh> {
    if n == 0 {
        return Err(Error::Config("grid size must be positive".into()));
    }
    if !(0.0..=MAX_MAGNITUDE).contains(&magnitude) {
        return Err(Error::Config(format!(
            "perturbation magnitude {magnitude} outside [0, {MAX_MAGNITUDE}]"
        )));
    }
    let mut vertices = grid_vertices(n);
    let quads = grid_quads(n);
    if magnitude > 0.0 {
        perturb(&mut vertices, &quads, n, magnitude, seed)?;
    }

    let mut cells = Vec::with_capacity(2 * quads.len());
    for (k, q) in quads.iter().enumerate() {
        let (i, j) = (k % n, k / n);
        if pattern.splits(i, j, n) {
            cells.push((CellKind::Triangle, vec![q[0], q[1], q[2]]));
            cells.push((CellKind::Triangle, vec![q[0], q[2], q[3]]));
        } else {
            cells.push((CellKind::Quad, q.to_vec()));
        }
    }
    Mesh::new(vertices, cells)
}

fn perturb(
    vertices: &mut [Point],
    quads: &[[usize; 4]],
    n: usize,
    magnitude: f64,
    seed: u64,
) -> Result<()> {
    let h = 1.0 / n as f64;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for (c, q) in quads.iter().enumerate() {
        for &v in q {
            incident[v].push(c);
        }
    }
    let acceptable = |vertices: &[Point], cells: &[usize]| {
        cells.iter().all(|&c| {
            let q = quads[c];
            QuadFrame::new([vertices[q[0]], vertices[q[1]], vertices[q[2]], vertices[q[3]]])
                .map(|f| f.alpha.abs() + f.beta.abs() <= PERTURBATION_CLAMP)
                .unwrap_or(false)
        })
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for j in 1..n {
        for i in 1..n {
            let v = j * (n + 1) + i;
            let home = vertices[v];
            let mut placed = false;
            for _ in 0..MAX_ATTEMPTS {
                let dx: f64 = rng.random_range(-1.0..=1.0);
                let dy: f64 = rng.random_range(-1.0..=1.0);
                vertices[v] = Point::new(home.x + magnitude * h * dx, home.y + magnitude * h * dy);
                if acceptable(vertices, &incident[v]) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                vertices[v] = home;
                return Err(Error::PerturbationFailed {
                    vertex: v,
                    attempts: MAX_ATTEMPTS,
                });
            }
        }
    }
    Ok(())
}

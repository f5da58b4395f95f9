//! Independent checks shared by the element, space and acceptance tests.

use quadfem::elements::{outward_normals, qltz_basis, quad_morley_basis, step2_matrix, tri_morley_basis, LocalBasis};
use quadfem::mesh::{Mesh, QuadFrame};
use quadfem::spaces::{interpolate_qltz_scalar, interpolate_qltz_vector, FeSpace, SpaceKind};
use quadfem::elements::quadrature::polygon_rule;
use quadfem::{Point, Vector};

use super::*;

/// `d_i(phi_j)` for mean-value functionals evaluated by the test quadrature.
pub fn qltz_duality(frame: &QuadFrame, basis: &LocalBasis) -> f64 {
    let v = frame.vertices();
    let mut worst: f64 = 0.0;
    for j in 0..5 {
        let phi = |p: Point| basis.eval(p).values[j];
        let mut d = vec![quad_integral(v, phi) / frame.area()];
        for i in 0..4 {
            d.push(edge_mean(v[i], v[(i + 1) % 4], phi));
        }
        for (i, di) in d.iter().enumerate() {
            worst = worst.max((di - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

pub fn morley_duality(vertices: &[Point], basis: &LocalBasis) -> f64 {
    let n = vertices.len();
    let normals = outward_normals(vertices);
    let mut worst: f64 = 0.0;
    for j in 0..2 * n {
        for i in 0..2 * n {
            let d = if i < n {
                basis.eval(vertices[i]).values[j]
            } else {
                let k = i - n;
                edge_mean(vertices[k], vertices[(k + 1) % n], |p| basis.eval(p).grads[j].dot(&normals[k]))
            };
            worst = worst.max((d - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    worst
}

/// Rows `e1..e4`, columns `1, xi, eta, xi^2, eta^2, xi^3, eta^3, xi^2 eta`.
pub fn edge_average_table(a: f64, b: f64) -> [[f64; 8]; 4] {
    [
        [1.0, 0.0, -1.0, (1.0 - b).powi(2) / 3.0, 1.0 + a * a / 3.0, 0.0, -1.0 - a * a, -(1.0 - b).powi(2) / 3.0],
        [1.0, -1.0, 0.0, 1.0 + b * b / 3.0, (1.0 - a).powi(2) / 3.0, -1.0 - b * b, 0.0, 2.0 * (1.0 - a) * b / 3.0],
        [1.0, 0.0, 1.0, (1.0 + b).powi(2) / 3.0, 1.0 + a * a / 3.0, 0.0, 1.0 + a * a, (1.0 + b).powi(2) / 3.0],
        [1.0, 1.0, 0.0, 1.0 + b * b / 3.0, (1.0 + a).powi(2) / 3.0, 1.0 + b * b, 0.0, 2.0 * (1.0 + a) * b / 3.0],
    ]
}

pub fn table_monomial(k: usize, xi: f64, eta: f64) -> f64 {
    match k {
        0 => 1.0,
        1 => xi,
        2 => eta,
        3 => xi * xi,
        4 => eta * eta,
        5 => xi.powi(3),
        6 => eta.powi(3),
        _ => xi * xi * eta,
    }
}

pub fn step2_numerator(a: f64, b: f64) -> f64 {
    -48.0 * a.powi(4) - 48.0 * b.powi(4) + 96.0 * a * a * b * b + 96.0 * a * a + 96.0 * b * b + 144.0
}


/// Worst duality defect of the QLTZ and both Morley bases over `cells`
/// random quadrilaterals and triangles.
pub fn element_duality_defect(seed: u64, cells: usize) -> f64 {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..cells {
        let frame = random_frame(&mut rng);
        worst = worst.max(qltz_duality(&frame, &qltz_basis(&frame)));
        let m = quad_morley_basis(&frame).expect("unisolvent");
        worst = worst.max(morley_duality(&frame.vertices(), &m));
        let t = random_triangle(&mut rng);
        worst = worst.max(morley_duality(&t, &tri_morley_basis(t).expect("unisolvent")));
    }
    worst
}

/// Worst relative mismatch between the tabulated edge averages and domain
/// integrals and quadrature, over `cells` random quadrilaterals.
pub fn table_defect(seed: u64, cells: usize) -> f64 {
    let mut rng = rng(seed);
    let mut worst: f64 = 0.0;
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
    for _ in 0..cells {
        let f = random_frame(&mut rng);
        let v = f.vertices();
        for (i, row) in edge_average_table(f.alpha, f.beta).iter().enumerate() {
            for (k, &expect) in row.iter().enumerate() {
                let got = edge_mean(v[i], v[(i + 1) % 4], |p| {
                    let (xi, eta) = f.xi_eta(p);
                    table_monomial(k, xi, eta)
                });
                worst = worst.max(rel(got, expect));
            }
        }
        let (a, b) = (f.alpha, f.beta);
        let expected = [
            4.0,
            4.0 * a / 3.0,
            4.0 * b / 3.0,
            4.0 / 3.0 * (1.0 + b * b),
            4.0 / 3.0 * (1.0 + a * a),
            4.0 / 3.0 * a * b,
        ];
        for (k, expect) in expected.iter().enumerate() {
            let got = quad_integral(v, |p| {
                let (xi, eta) = f.xi_eta(p);
                [1.0, xi, eta, xi * xi, eta * eta, xi * eta][k]
            }) / f.cross;
            worst = worst.max(rel(got, *expect));
        }
    }
    worst
}

/// `(worst relative determinant mismatch, smallest determinant)` of the
/// bubble moment matrix over `cells` random quadrilaterals.
pub fn step2_defect(seed: u64, cells: usize) -> (f64, f64) {
    let mut rng = rng(seed);
    let (mut worst, mut smallest): (f64, f64) = (0.0, f64::INFINITY);
    for _ in 0..cells {
        let f = random_frame(&mut rng);
        let d = f.alpha * f.alpha + f.beta * f.beta + 3.0;
        let expect = step2_numerator(f.alpha, f.beta) / (d * d) * f.cross;
        let got = step2_matrix(&f).map(|s| s.det).unwrap_or(f64::NEG_INFINITY);
        worst = worst.max((got - expect).abs() / expect.abs());
        smallest = smallest.min(got / f.cross);
    }
    (worst, smallest)
}

/// Worst `|∫_K div(Πw) q - ∫_K div(w) q|` over every cell and every pressure
/// basis function `q` of that cell.
pub fn divergence_moment_defect(mesh: &Mesh) -> f64 {
    let velocity = FeSpace::vector(mesh, SpaceKind::Qltz).unwrap();
    let pressure = FeSpace::new(mesh, SpaceKind::Pressure).unwrap();
    let w = |p: Point| Vector::new((3.0 * p.x).sin() * p.y, p.x * p.x * (2.0 * p.y).cos());
    let div = |p: Point| 3.0 * (3.0 * p.x).cos() * p.y - 2.0 * p.x * p.x * (2.0 * p.y).sin();
    let u = interpolate_qltz_vector(&velocity, w).unwrap();
    let mut worst: f64 = 0.0;
    for c in 0..mesh.n_cells() {
        let rule = polygon_rule(&mesh.cell_points(c), 14).unwrap();
        let q = pressure.basis(c);
        for k in 0..q.dim() {
            let lhs = rule.integrate(|p| u.div(c, p).unwrap() * q.values(p)[k]);
            let rhs = rule.integrate(|p| div(p) * q.values(p)[k]);
            worst = worst.max((lhs - rhs).abs());
        }
    }
    worst
}

/// Worst pointwise error when interpolating a function that is piecewise in
/// the local space, cell by cell on a one-cell mesh per cell of `mesh`.
pub fn reproduction_defect(mesh: &Mesh) -> f64 {
    let mut worst: f64 = 0.0;
    for c in 0..mesh.n_cells() {
        let pts = mesh.cell_points(c);
        let local = match pts.len() {
            4 => one_quad_mesh([pts[0], pts[1], pts[2], pts[3]]),
            _ => one_triangle_mesh([pts[0], pts[1], pts[2]]),
        };
        let space = FeSpace::new(&local, SpaceKind::Qltz).unwrap();
        let w: Box<dyn Fn(Point) -> f64> = match local.frame(0) {
            Some(f) => {
                let f = *f;
                Box::new(move |p: Point| {
                    let (xi, eta) = f.xi_eta(p);
                    0.4 - 1.3 * xi + 0.8 * eta + 2.1 * xi * xi - 0.6 * eta * eta
                })
            }
            None => Box::new(|p: Point| 0.4 - 1.3 * p.x + 0.8 * p.y),
        };
        let u = interpolate_qltz_scalar(&space, &w).unwrap();
        for k in 0..3 {
            let p = centroid_shift(&pts, k);
            worst = worst.max((u.value(0, p).unwrap() - w(p)).abs());
        }
    }
    worst
}

fn centroid_shift(pts: &[Point], k: usize) -> Point {
    let mut c = Vector::zeros();
    for p in pts {
        c += p.coords / pts.len() as f64;
    }
    Point::from(c) + (pts[k] - Point::from(c)) * 0.7
}

/// Euler's formula and every DOF dimension identity as exact integer
/// equalities; `Err` names the first one violated.
pub fn dimension_identities(mesh: &Mesh) -> Result<(), String> {
    use quadfem::spaces::DofMap;
    let c = mesh.counts();
    let dim = |kind| DofMap::build(mesh, kind).dim();
    let vector = DofMap::vector(mesh, SpaceKind::Qltz0).dim();
    let checks = [
        ("F + X = E + 1", c.cells + c.vertices, c.edges + 1),
        ("F = #Q + #T", c.cells, c.quads + c.triangles),
        ("E = E_I + E_B", c.edges, c.interior_edges + c.boundary_edges),
        ("E_B = X_B", c.boundary_edges, c.boundary_vertices),
        ("4#Q + 3#T = 2E_I + E_B", 4 * c.quads + 3 * c.triangles, 2 * c.interior_edges + c.boundary_edges),
        ("dim V_h0 = E_I + #Q", dim(SpaceKind::Qltz0), c.interior_edges + c.quads),
        ("dim V_h0 (vector)", vector, 2 * (c.interior_edges + c.quads)),
        ("dim M_h0 = E_I + X_I", dim(SpaceKind::Morley0), c.interior_edges + c.interior_vertices),
        ("dim W_h0 = 3#Q + #T - 1", dim(SpaceKind::Pressure0), 3 * c.quads + c.triangles - 1),
        ("dim V_h0 - dim W_h0 = dim M_h0", vector - dim(SpaceKind::Pressure0), dim(SpaceKind::Morley0)),
        ("dim V_h = E + #Q", dim(SpaceKind::Qltz), c.edges + c.quads),
        ("dim M_h = E + X", dim(SpaceKind::Morley), c.edges + c.vertices),
        ("dim W_h = 3#Q + #T", dim(SpaceKind::Pressure), 3 * c.quads + c.triangles),
    ];
    for (name, lhs, rhs) in checks {
        if lhs != rhs {
            return Err(format!("{name}: {lhs} != {rhs}"));
        }
    }
    Ok(())
}

//! Exact quadrature for polynomials on triangles, convex quadrilaterals and edges.
//!
//! Triangles use conical-product (collapsed Gauss) rules; a quadrilateral is
//! split into two triangles along a diagonal. Since every local space here is
//! polynomial in affine coordinates, this integrates them exactly.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::mesh::{signed_area, Mesh};
use crate::Point;

/// Highest polynomial degree for which rules are provided.
pub const MAX_DEGREE: usize = 24;

/// Default degree for integrating non-polynomial data.
pub const DEFAULT_OVER_INTEGRATION: usize = 10;

/// Degree used for non-polynomial integrands; `FEM_QUAD_DEGREE` overrides it.
pub fn over_integration_degree() -> usize {
    static DEGREE: OnceLock<usize> = OnceLock::new();
    *DEGREE.get_or_init(|| {
        std::env::var("FEM_QUAD_DEGREE")
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .filter(|&d| d <= MAX_DEGREE)
            .unwrap_or(DEFAULT_OVER_INTEGRATION)
    })
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let dp = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, dp)
}

fn points_for_degree(degree: usize) -> usize {
    degree / 2 + 1
}

type ReferenceRule = (Vec<[f64; 2]>, Vec<f64>);

/// Reference rules on the triangle `(0,0), (1,0), (0,1)` (weights sum to 1/2).
fn reference_triangle(degree: usize) -> &'static ReferenceRule {
    static RULES: OnceLock<Vec<ReferenceRule>> = OnceLock::new();
    let rules = RULES.get_or_init(|| {
        (0..=MAX_DEGREE)
            .map(|d| {
                // the collapse adds a factor (1 - u) to the integrand
                let n = points_for_degree(d + 1);
                let (x, w) = gauss_legendre(n);
                let mut pts = Vec::with_capacity(n * n);
                let mut wts = Vec::with_capacity(n * n);
                for a in 0..n {
                    let u = 0.5 * (x[a] + 1.0);
                    for b in 0..n {
                        let v = 0.5 * (x[b] + 1.0);
                        pts.push([u, v * (1.0 - u)]);
                        wts.push(0.25 * w[a] * w[b] * (1.0 - u));
                    }
                }
                (pts, wts)
            })
            .collect()
    });
    &rules[degree]
}

/// Points and weights in physical coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub points: Vec<Point>,
    pub weights: Vec<f64>,
    pub degree: usize,
}

impl QuadratureRule {
    pub fn integrate(&self, mut f: impl FnMut(Point) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(&p, &w)| w * f(p))
            .sum()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    fn append(&mut self, other: QuadratureRule) {
        self.points.extend(other.points);
        self.weights.extend(other.weights);
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(degree));
    }
    Ok(())
}

/// Rule on the triangle `abc` (any orientation), exact to `degree`.
pub fn triangle_rule(a: Point, b: Point, c: Point, degree: usize) -> Result<QuadratureRule> {
    check_degree(degree)?;
    let (pts, wts) = reference_triangle(degree);
    let jac = 2.0 * signed_area(&[a, b, c]).abs();
    let (ab, ac) = (b - a, c - a);
    Ok(QuadratureRule {
        points: pts.iter().map(|[u, v]| a + ab * *u + ac * *v).collect(),
        weights: wts.iter().map(|w| w * jac).collect(),
        degree,
    })
}

/// Which diagonal splits a quadrilateral `a1 a2 a3 a4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Diagonal {
    /// `a1 a3`
    #[default]
    First,
    /// `a2 a4`
    Second,
}

/// Rule on a convex polygon by a fan split from the first vertex.
pub fn polygon_rule(vertices: &[Point], degree: usize) -> Result<QuadratureRule> {
    check_degree(degree)?;
    let mut rule = QuadratureRule {
        points: Vec::new(),
        weights: Vec::new(),
        degree,
    };
    for k in 1..vertices.len() - 1 {
        rule.append(triangle_rule(vertices[0], vertices[k], vertices[k + 1], degree)?);
    }
    Ok(rule)
}

/// Rule on a convex quadrilateral split along the given diagonal.
pub fn quad_rule(vertices: [Point; 4], degree: usize, diagonal: Diagonal) -> Result<QuadratureRule> {
    match diagonal {
        Diagonal::First => polygon_rule(&vertices, degree),
        Diagonal::Second => polygon_rule(&[vertices[1], vertices[2], vertices[3], vertices[0]], degree),
    }
}

/// Gauss-Legendre rule on the segment `ab`; weights sum to its length.
pub fn edge_rule(a: Point, b: Point, degree: usize) -> Result<QuadratureRule> {
    check_degree(degree)?;
    let n = points_for_degree(degree);
    let (x, w) = gauss_legendre(n);
    let half = 0.5 * (b - a).norm();
    let mid = nalgebra::center(&a, &b);
    let dir = 0.5 * (b - a);
    Ok(QuadratureRule {
        points: x.iter().map(|t| mid + dir * *t).collect(),
        weights: w.iter().map(|wi| wi * half).collect(),
        degree,
    })
}

/// Rule over a mesh cell.
pub fn cell_rule(mesh: &Mesh, cell: usize, degree: usize) -> Result<QuadratureRule> {
    polygon_rule(&mesh.cell_points(cell), degree)
}

/// `∫_K f dx`, exact for polynomials up to `degree`.
pub fn integrate_cell(
    mesh: &Mesh,
    cell: usize,
    degree: usize,
    f: impl FnMut(Point) -> f64,
) -> Result<f64> {
    Ok(cell_rule(mesh, cell, degree)?.integrate(f))
}

/// `∫_e f ds`, exact for polynomials up to `degree`.
pub fn integrate_edge(
    mesh: &Mesh,
    edge: usize,
    degree: usize,
    f: impl FnMut(Point) -> f64,
) -> Result<f64> {
    let [a, b] = mesh.edge(edge).vertices;
    Ok(edge_rule(mesh.vertex(a), mesh.vertex(b), degree)?.integrate(f))
}

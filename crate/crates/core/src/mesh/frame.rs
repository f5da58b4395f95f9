//! The midpoint-parallelogram frame of a convex quadrilateral.
//!
//! For a convex quadrilateral with counterclockwise vertices `a1..a4` and
//! edges `e_i = a_i a_{i+1}`, the edge midpoints `m1..m4` form a
//! parallelogram centred at `O`. With `r = m3 - O` and `s = m4 - O` every
//! point is written `p = O + eta * r + xi * s`; the affine coordinates
//! `(xi, eta)` play the role barycentric coordinates play on triangles.
//!
//! The vertices deviate from the parallelogram `O ± r ± s` by the distortion
//! `d = alpha * r + beta * s` with alternating sign:
//!
//! ```text
//! a1 = O - r + s - d     (eta, xi) = (-1 - alpha,  1 - beta)
//! a2 = O - r - s + d     (eta, xi) = (-1 + alpha, -1 + beta)
//! a3 = O + r - s - d     (eta, xi) = ( 1 - alpha, -1 - beta)
//! a4 = O + r + s + d     (eta, xi) = ( 1 + alpha,  1 + beta)
//! ```

use crate::error::{Error, Result};
use crate::{Point, Vector};

/// Relative tolerance on `|alpha| + |beta|` below 1.
pub const EPS_CONVEX: f64 = 1e-10;
/// Relative tolerance on `r x s` against `|r||s|`.
pub const EPS_AREA: f64 = 1e-12;

/// 2D cross product `a x b`.
#[inline]
pub fn cross(a: Vector, b: Vector) -> f64 {
    a.x * b.y - a.y * b.x
}

/// Signed area of a polygon (positive for counterclockwise order).
pub fn signed_area(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let mut twice = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    0.5 * twice
}

/// Coordinate frame `(O, r, s, alpha, beta)` of a strictly convex quadrilateral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadFrame {
    pub origin: Point,
    pub r: Vector,
    pub s: Vector,
    pub alpha: f64,
    pub beta: f64,
    /// `r x s`; the cell area is `4 * cross`.
    pub cross: f64,
    vertices: [Point; 4],
}

impl QuadFrame {
    /// Builds the frame of a counterclockwise, strictly convex quadrilateral.
    pub fn new(vertices: [Point; 4]) -> Result<Self> {
        let area = signed_area(&vertices);
        let scale = vertices
            .iter()
            .map(|v| (v - vertices[0]).norm_squared())
            .fold(0.0, f64::max);
        if area.abs() <= EPS_AREA * scale {
            return Err(Error::Degenerate { cell: None });
        }
        if area < 0.0 {
            return Err(Error::BadOrientation { cell: None });
        }

        let [a1, a2, a3, a4] = vertices;
        let m1 = nalgebra::center(&a1, &a2);
        let m3 = nalgebra::center(&a3, &a4);
        let m4 = nalgebra::center(&a4, &a1);
        let origin = nalgebra::center(&m1, &m3);
        let r = m3 - origin;
        let s = m4 - origin;
        let rs = cross(r, s);
        if rs <= EPS_AREA * r.norm() * s.norm() {
            return Err(Error::Degenerate { cell: None });
        }

        let d = a4 - origin - r - s;
        let alpha = cross(d, s) / rs;
        let beta = cross(r, d) / rs;
        let measure = alpha.abs() + beta.abs();
        if measure >= 1.0 - EPS_CONVEX {
            return Err(Error::NonConvex { cell: None, measure });
        }

        Ok(Self {
            origin,
            r,
            s,
            alpha,
            beta,
            cross: rs,
            vertices,
        })
    }

    /// The four input vertices `a1..a4`.
    pub fn vertices(&self) -> [Point; 4] {
        self.vertices
    }

    /// `(eta_i, xi_i)` of the four vertices in the `(r, s)` frame.
    pub fn vertex_coords(&self) -> [(f64, f64); 4] {
        let (a, b) = (self.alpha, self.beta);
        [
            (-1.0 - a, 1.0 - b),
            (-1.0 + a, -1.0 + b),
            (1.0 - a, -1.0 - b),
            (1.0 + a, 1.0 + b),
        ]
    }

    /// Rebuilds the vertices from `(O, r, s, alpha, beta)` alone.
    pub fn reconstruct_vertices(&self) -> [Point; 4] {
        self.vertex_coords()
            .map(|(eta, xi)| self.origin + self.r * eta + self.s * xi)
    }

    /// Local coordinates `(xi, eta)` of `p`, i.e. `p - O = eta * r + xi * s`.
    pub fn xi_eta(&self, p: Point) -> (f64, f64) {
        let d = p - self.origin;
        let eta = cross(d, self.s) / self.cross;
        let xi = cross(self.r, d) / self.cross;
        (xi, eta)
    }

    /// Shape regularity indicator `max{|r||s|/(r x s), |r|/|s|, |s|/|r|}`.
    pub fn shape_regularity(&self) -> f64 {
        let (nr, ns) = (self.r.norm(), self.s.norm());
        (nr * ns / self.cross).max(nr / ns).max(ns / nr)
    }

    pub fn area(&self) -> f64 {
        4.0 * self.cross
    }
}

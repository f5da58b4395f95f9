//! Manufactured solutions on the unit square.

use std::f64::consts::PI;

use nalgebra::Matrix2;

use crate::spaces::Jet;
use crate::{Point, Vector};

/// `x²(1-x)²` and its first four derivatives.
fn bump(x: f64) -> [f64; 5] {
    [
        x * x * (1.0 - x) * (1.0 - x),
        2.0 * x - 6.0 * x * x + 4.0 * x * x * x,
        2.0 - 12.0 * x + 12.0 * x * x,
        -12.0 + 24.0 * x,
        24.0,
    ]
}

/// Poisson: `u = sin(πx) sin(πy)`, `f = 2π² u`.
pub fn poisson_exact(p: Point) -> Jet {
    let (sx, cx) = (PI * p.x).sin_cos();
    let (sy, cy) = (PI * p.y).sin_cos();
    let pi2 = PI * PI;
    (
        sx * sy,
        Vector::new(PI * cx * sy, PI * sx * cy),
        Matrix2::new(-pi2 * sx * sy, pi2 * cx * cy, pi2 * cx * cy, -pi2 * sx * sy),
    )
}

pub fn poisson_rhs(p: Point) -> f64 {
    2.0 * PI * PI * poisson_exact(p).0
}

/// The bubble `ψ = x²(1-x)² y²(1-y)²`; it vanishes with its gradient on the boundary.
pub fn bubble(p: Point) -> Jet {
    let (a, b) = (bump(p.x), bump(p.y));
    (
        a[0] * b[0],
        Vector::new(a[1] * b[0], a[0] * b[1]),
        Matrix2::new(a[2] * b[0], a[1] * b[1], a[1] * b[1], a[0] * b[2]),
    )
}

/// `Δ²ψ`.
pub fn biharmonic_rhs(p: Point) -> f64 {
    let (a, b) = (bump(p.x), bump(p.y));
    a[4] * b[0] + 2.0 * a[2] * b[2] + a[0] * b[4]
}

/// Stokes velocity `u = curl ψ = (∂_y ψ, -∂_x ψ)`, component `k`.
pub fn stokes_velocity(p: Point, k: usize) -> Jet {
    let (a, b) = (bump(p.x), bump(p.y));
    if k == 0 {
        (
            a[0] * b[1],
            Vector::new(a[1] * b[1], a[0] * b[2]),
            Matrix2::new(a[2] * b[1], a[1] * b[2], a[1] * b[2], a[0] * b[3]),
        )
    } else {
        (
            -a[1] * b[0],
            Vector::new(-a[2] * b[0], -a[1] * b[1]),
            Matrix2::new(-a[3] * b[0], -a[2] * b[1], -a[2] * b[1], -a[1] * b[2]),
        )
    }
}

/// Stokes pressure `p = x³ + y³ - 1/2` (zero mean).
pub fn stokes_pressure(p: Point) -> Jet {
    (
        p.x.powi(3) + p.y.powi(3) - 0.5,
        Vector::new(3.0 * p.x * p.x, 3.0 * p.y * p.y),
        Matrix2::new(6.0 * p.x, 0.0, 0.0, 6.0 * p.y),
    )
}

/// `f = -Δu + ∇p`.
pub fn stokes_rhs(p: Point) -> Vector {
    let lap = |k| stokes_velocity(p, k).2.trace();
    Vector::new(-lap(0), -lap(1)) + stokes_pressure(p).1
}

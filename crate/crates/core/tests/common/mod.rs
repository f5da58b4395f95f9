#![allow(dead_code)]

use quadfem::mesh::{CellKind, Mesh, QuadFrame};
use quadfem::{Point, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod oracles;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random strictly convex quadrilateral built from a frame: random centre,
/// random (r, s) with bounded aspect and angle, and `|alpha| + |beta| <= 0.85`.
/// Vertices follow `a1 = O + (-1-α) r + (1-β) s`, and so on.
pub fn random_quad(rng: &mut ChaCha8Rng) -> [Point; 4] {
    loop {
        let o = Point::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let lr = rng.random_range(0.2..1.5);
        let ls = lr * rng.random_range(0.4..2.5);
        let th = rng.random_range(0.0..std::f64::consts::TAU);
        let gap = rng.random_range(0.5..2.6);
        let r = Vector::new(th.cos(), th.sin()) * lr;
        let s = Vector::new((th + gap).cos(), (th + gap).sin()) * ls;
        let alpha: f64 = rng.random_range(-0.85..0.85);
        let beta: f64 = rng.random_range(-0.85..0.85);
        if alpha.abs() + beta.abs() > 0.85 {
            continue;
        }
        let at = |eta: f64, xi: f64| o + r * eta + s * xi;
        return [
            at(-1.0 - alpha, 1.0 - beta),
            at(-1.0 + alpha, -1.0 + beta),
            at(1.0 - alpha, -1.0 - beta),
            at(1.0 + alpha, 1.0 + beta),
        ];
    }
}

pub fn random_frame(rng: &mut ChaCha8Rng) -> QuadFrame {
    QuadFrame::new(random_quad(rng)).expect("generated quad is convex")
}

/// Random counterclockwise triangle with angles bounded away from zero.
pub fn random_triangle(rng: &mut ChaCha8Rng) -> [Point; 3] {
    loop {
        let v: Vec<Point> = (0..3)
            .map(|_| Point::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        let area = 0.5 * ((v[1] - v[0]).perp(&(v[2] - v[0])));
        let longest = (0..3).map(|i| (v[(i + 1) % 3] - v[i]).norm()).fold(0.0, f64::max);
        if area.abs() < 0.05 * longest * longest {
            continue;
        }
        return if area > 0.0 { [v[0], v[1], v[2]] } else { [v[0], v[2], v[1]] };
    }
}

/// Random point strictly inside a convex polygon.
pub fn random_interior_point(rng: &mut ChaCha8Rng, poly: &[Point]) -> Point {
    let mut w: Vec<f64> = (0..poly.len()).map(|_| rng.random_range(0.05..1.0)).collect();
    let sum: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= sum);
    let mut p = Vector::zeros();
    for (q, wi) in poly.iter().zip(&w) {
        p += q.coords * *wi;
    }
    Point::from(p)
}

pub fn one_quad_mesh(v: [Point; 4]) -> Mesh {
    Mesh::new(v.to_vec(), vec![(CellKind::Quad, vec![0, 1, 2, 3])]).unwrap()
}

pub fn one_triangle_mesh(v: [Point; 3]) -> Mesh {
    Mesh::new(v.to_vec(), vec![(CellKind::Triangle, vec![0, 1, 2])]).unwrap()
}

pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

// Five-point Gauss-Legendre on [-1, 1], exact through degree 9.
const GL5_X: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL5_W: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

/// Mean of `f` over the segment `ab`.
pub fn edge_mean(a: Point, b: Point, f: impl Fn(Point) -> f64) -> f64 {
    let mid = nalgebra::center(&a, &b);
    let half = (b - a) * 0.5;
    GL5_X.iter().zip(GL5_W).map(|(t, w)| w * f(mid + half * *t)).sum::<f64>() * 0.5
}

/// `∫ f` over a convex quadrilateral through the bilinear map of the
/// reference square; exact for cubic integrands.
pub fn quad_integral(v: [Point; 4], f: impl Fn(Point) -> f64) -> f64 {
    let mut sum = 0.0;
    for (s, ws) in GL5_X.iter().zip(GL5_W) {
        for (t, wt) in GL5_X.iter().zip(GL5_W) {
            let n = [
                0.25 * (1.0 - s) * (1.0 - t),
                0.25 * (1.0 + s) * (1.0 - t),
                0.25 * (1.0 + s) * (1.0 + t),
                0.25 * (1.0 - s) * (1.0 + t),
            ];
            let mut p = Vector::zeros();
            for k in 0..4 {
                p += v[k].coords * n[k];
            }
            let ds = ((v[1] - v[0]) * (1.0 - t) + (v[2] - v[3]) * (1.0 + t)) * 0.25;
            let dt = ((v[3] - v[0]) * (1.0 - s) + (v[2] - v[1]) * (1.0 + s)) * 0.25;
            let jac = ds.x * dt.y - ds.y * dt.x;
            sum += ws * wt * jac * f(Point::from(p));
        }
    }
    sum
}

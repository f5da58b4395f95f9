mod common;

use common::oracles::*;
use common::*;
use nalgebra::Matrix2;
use proptest::prelude::*;
use quadfem::elements::quadrature::{quad_rule, Diagonal};
use quadfem::elements::{
    outward_normals, qltz_basis, qltz_basis_from_dofs, quad_morley_basis, step2_matrix,
    tri_morley_basis, tri_p1nc_basis,
};
use quadfem::mesh::{signed_area, QuadFrame};
use quadfem::{Point, Vector};

const N_CELLS: usize = 100;

#[test]
fn qltz_closed_form_is_dual_on_random_quads() {
    let mut rng = rng(11);
    for _ in 0..N_CELLS {
        let frame = random_frame(&mut rng);
        let d = qltz_duality(&frame, &qltz_basis(&frame));
        assert!(d < 1e-10, "duality defect {d} for {frame:?}");
    }
}

#[test]
fn qltz_closed_form_matches_inverted_dof_matrix() {
    let mut rng = rng(12);
    for _ in 0..N_CELLS {
        let frame = random_frame(&mut rng);
        let a = qltz_basis(&frame);
        let b = qltz_basis_from_dofs(&frame).unwrap();
        assert!((a.coefficients() - b.coefficients()).abs().max() < 1e-10);
    }
}

#[test]
fn morley_bases_are_dual_on_random_cells() {
    let mut rng = rng(13);
    for _ in 0..N_CELLS {
        let frame = random_frame(&mut rng);
        let d = morley_duality(&frame.vertices(), &quad_morley_basis(&frame).unwrap());
        assert!(d < 1e-10, "quad Morley defect {d}");
        let t = random_triangle(&mut rng);
        let d = morley_duality(&t, &tri_morley_basis(t).unwrap());
        assert!(d < 1e-10, "triangle Morley defect {d}");
    }
}

#[test]
fn crouzeix_raviart_is_dual_on_random_triangles() {
    let mut rng = rng(14);
    for _ in 0..N_CELLS {
        let t = random_triangle(&mut rng);
        let b = tri_p1nc_basis(t).unwrap();
        for j in 0..3 {
            for i in 0..3 {
                let d = edge_mean(t[i], t[(i + 1) % 3], |p| b.eval(p).values[j]);
                assert!((d - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn bubble_closed_form_on_unit_square() {
    let frame = QuadFrame::new([
        Point::new(0., 1.),
        Point::new(0., 0.),
        Point::new(1., 0.),
        Point::new(1., 1.),
    ])
    .unwrap();
    let b = qltz_basis(&frame);
    // 3 (4 - 3 xi^2 - 3 eta^2) / 6 with xi = 2y - 1, eta = 2x - 1
    let p = Point::new(0.8, 0.3);
    let (xi, eta) = (2.0 * p.y - 1.0, 2.0 * p.x - 1.0);
    let expect = (4.0 - 3.0 * xi * xi - 3.0 * eta * eta) / 2.0;
    assert!((b.eval(p).values[0] - expect).abs() < 1e-14);
}

#[test]
fn edge_average_table_matches_quadrature() {
    let mut rng = rng(21);
    for _ in 0..N_CELLS {
        let f = random_frame(&mut rng);
        let v = f.vertices();
        let table = edge_average_table(f.alpha, f.beta);
        for (i, row) in table.iter().enumerate() {
            for (k, &expect) in row.iter().enumerate() {
                let got = edge_mean(v[i], v[(i + 1) % 4], |p| {
                    let (xi, eta) = f.xi_eta(p);
                    table_monomial(k, xi, eta)
                });
                assert!(close(got, expect, 1e-11), "e{} col {k}: {got} vs {expect}", i + 1);
            }
        }
    }
}

#[test]
fn domain_integral_table_matches_quadrature() {
    let mut rng = rng(22);
    for _ in 0..N_CELLS {
        let f = random_frame(&mut rng);
        let (a, b, rs) = (f.alpha, f.beta, f.cross);
        type Monomial = fn(f64, f64) -> f64;
        let cases: [(Monomial, f64); 6] = [
            (|_, _| 1.0, 4.0),
            (|x, _| x, 4.0 * a / 3.0),
            (|_, y| y, 4.0 * b / 3.0),
            (|x, _| x * x, 4.0 / 3.0 * (1.0 + b * b)),
            (|_, y| y * y, 4.0 / 3.0 * (1.0 + a * a)),
            (|x, y| x * y, 4.0 / 3.0 * a * b),
        ];
        for (k, (u, expect)) in cases.iter().enumerate() {
            let got = quad_integral(f.vertices(), |p| {
                let (xi, eta) = f.xi_eta(p);
                u(xi, eta)
            });
            assert!(close(got, expect * rs, 1e-11), "column {k}: {got} vs {}", expect * rs);
        }
    }
}

#[test]
fn bubble_directional_derivatives() {
    let mut rng = rng(23);
    for _ in 0..N_CELLS {
        let f = random_frame(&mut rng);
        let b = qltz_basis(&f);
        let d = f.alpha * f.alpha + f.beta * f.beta + 3.0;
        let p = random_interior_point(&mut rng, &f.vertices());
        let (xi, eta) = f.xi_eta(p);
        let g = b.eval(p).grads[0];
        assert!((f.r.dot(&g) - (-9.0 * eta + 3.0 * f.beta) / d).abs() < 1e-11);
        assert!((f.s.dot(&g) - (-9.0 * xi + 3.0 * f.alpha) / d).abs() < 1e-11);
    }
}

#[test]
fn bubble_moment_entries_and_determinant() {
    let mut rng = rng(24);
    for _ in 0..N_CELLS {
        let f = random_frame(&mut rng);
        let (a, b, rs) = (f.alpha, f.beta, f.cross);
        let d = a * a + b * b + 3.0;
        let basis = qltz_basis(&f);
        let moment = |dir: Vector, test: fn(f64, f64) -> f64| {
            quad_integral(f.vertices(), |p| {
                let (xi, eta) = f.xi_eta(p);
                dir.dot(&basis.eval(p).grads[0]) * test(xi, eta)
            })
        };
        let xi = |x: f64, _: f64| x;
        let eta = |_: f64, y: f64| y;
        let r_xi = moment(f.r, xi);
        let s_xi = moment(f.s, xi);
        let r_eta = moment(f.r, eta);
        let s_eta = moment(f.s, eta);
        assert!(close(r_xi, -8.0 * a * b / d * rs, 1e-11));
        assert!(close(s_xi, (4.0 * a * a - 12.0 * b * b - 12.0) / d * rs, 1e-11));
        assert!(close(r_eta, (-12.0 * a * a + 4.0 * b * b - 12.0) / d * rs, 1e-11));
        assert!(close(s_eta, -8.0 * a * b / d * rs, 1e-11));

        // with the eta row first the determinant carries the positive sign
        let m = Matrix2::new(r_eta, s_eta, r_xi, s_xi);
        let expect = step2_numerator(a, b) / (d * d) * rs * rs;
        assert!(expect > 0.0);
        assert!(close(m.determinant(), expect, 1e-10));

        // in physical derivatives the frame Jacobian contributes 1 / (r x s)
        let step2 = step2_matrix(&f).unwrap();
        assert!(close(step2.det, expect / rs, 1e-10), "{} vs {}", step2.det, expect / rs);
    }
}

#[test]
fn basis_gradients_match_finite_differences() {
    let mut rng = rng(25);
    let h = 1e-6;
    for _ in 0..20 {
        let f = random_frame(&mut rng);
        let p = random_interior_point(&mut rng, &f.vertices());
        for basis in [qltz_basis(&f), quad_morley_basis(&f).unwrap()] {
            let e = basis.eval(p);
            for j in 0..basis.dim() {
                let fd = |d: Vector| (basis.eval(p + d * h).values[j] - basis.eval(p - d * h).values[j]) / (2.0 * h);
                let gx = fd(Vector::x());
                let gy = fd(Vector::y());
                let scale = e.grads[j].norm().max(1.0);
                assert!((gx - e.grads[j].x).abs() < 1e-6 * scale);
                assert!((gy - e.grads[j].y).abs() < 1e-6 * scale);
                let hx = (basis.eval(p + Vector::x() * h).grads[j] - basis.eval(p - Vector::x() * h).grads[j]) / (2.0 * h);
                let hy = (basis.eval(p + Vector::y() * h).grads[j] - basis.eval(p - Vector::y() * h).grads[j]) / (2.0 * h);
                let hess = e.hessians[j];
                let hs = hess.abs().max().max(1.0);
                assert!((hx - hess.column(0)).abs().max() < 1e-5 * hs);
                assert!((hy - hess.column(1)).abs().max() < 1e-5 * hs);
            }
        }
    }
}

#[test]
fn quadrature_independent_of_diagonal() {
    let mut rng = rng(26);
    for _ in 0..N_CELLS {
        let f = random_frame(&mut rng);
        let b = quad_morley_basis(&f).unwrap();
        let first = quad_rule(f.vertices(), 6, Diagonal::First).unwrap();
        let second = quad_rule(f.vertices(), 6, Diagonal::Second).unwrap();
        for j in 0..8 {
            let g = |p: Point| b.eval(p).values[j] * b.eval(p).values[(j + 3) % 8];
            let (x, y) = (first.integrate(g), second.integrate(g));
            assert!(close(x, y, 1e-12), "{x} vs {y}");
        }
    }
}

#[test]
fn frame_area_matches_shoelace() {
    let mut rng = rng(27);
    for _ in 0..N_CELLS {
        let f = random_frame(&mut rng);
        assert!(close(f.area(), signed_area(&f.vertices()), 1e-13));
    }
}

#[test]
fn local_spaces_reproduce_their_members() {
    let mut rng = rng(28);
    for _ in 0..N_CELLS {
        let f = random_frame(&mut rng);
        let v = f.vertices();
        let b = qltz_basis(&f);
        let (c0, c1, c2, c3, c4) = (0.3, -1.1, 0.7, 2.0, -0.4);
        let w = |p: Point| {
            let (xi, eta) = f.xi_eta(p);
            c0 + c1 * xi + c2 * eta + c3 * xi * xi + c4 * eta * eta
        };
        let mut dofs = vec![quad_integral(v, w) / f.area()];
        for i in 0..4 {
            dofs.push(edge_mean(v[i], v[(i + 1) % 4], w));
        }
        let p = random_interior_point(&mut rng, &v);
        let (val, _, _) = b.combine(&dofs, p);
        assert!((val - w(p)).abs() < 1e-11 * w(p).abs().max(1.0));

        // xi^3 and eta^3 lie in the quadrilateral Morley space
        let m = quad_morley_basis(&f).unwrap();
        let normals = outward_normals(&v);
        let phi = |p: Point| {
            let (xi, eta) = f.xi_eta(p);
            xi.powi(3) - 2.0 * eta.powi(3) + xi * eta
        };
        let grad = |p: Point| {
            let h = 1e-5;
            // cubic: central differences are exact up to rounding
            Vector::new(
                (phi(p + Vector::x() * h) - phi(p - Vector::x() * h)) / (2.0 * h),
                (phi(p + Vector::y() * h) - phi(p - Vector::y() * h)) / (2.0 * h),
            )
        };
        let mut dofs: Vec<f64> = v.iter().map(|&q| phi(q)).collect();
        for i in 0..4 {
            dofs.push(edge_mean(v[i], v[(i + 1) % 4], |q| grad(q).dot(&normals[i])));
        }
        let (val, _, _) = m.combine(&dofs, p);
        assert!((val - phi(p)).abs() < 1e-7 * phi(p).abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qltz_partition_of_unity(seed in 0u64..10_000) {
        // the five dual functions sum to one: the constant has all DOFs equal to 1
        let mut rng = rng(seed);
        let f = random_frame(&mut rng);
        let p = random_interior_point(&mut rng, &f.vertices());
        let s: f64 = qltz_basis(&f).eval(p).values.iter().sum();
        prop_assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn frame_vertex_reconstruction(seed in 0u64..10_000) {
        let mut rng = rng(seed);
        let f = random_frame(&mut rng);
        for (a, b) in f.vertices().iter().zip(f.reconstruct_vertices()) {
            prop_assert!((a - b).norm() < 1e-12);
        }
        prop_assert!(f.shape_regularity() >= 1.0);
    }
}

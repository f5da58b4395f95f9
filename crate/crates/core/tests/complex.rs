use quadfem::assembly::assemble_div;
use quadfem::complex::{analyze_complex_with, check_exact_sequence, curl_morley, Corruption};
use quadfem::experiments::run_complex_check;
use quadfem::mesh::{generate_mixed_perturbed, generate_structured_quads, Mesh, MixedPattern};
use quadfem::spaces::{FeFunction, FeSpace, SpaceKind};
use quadfem::{Error, Point};

fn suite_meshes() -> Vec<(String, Mesh)> {
    let mut out = Vec::new();
    for n in [1, 2, 4] {
        out.push((format!("quad n={n}"), generate_structured_quads(n)));
        for seed in [1, 2] {
            out.push((
                format!("perturbed quad n={n} seed={seed}"),
                generate_mixed_perturbed(n, MixedPattern::None, 0.2, seed).unwrap(),
            ));
        }
    }
    for n in [2, 4] {
        for pattern in [MixedPattern::Checkerboard, MixedPattern::HalfSplit] {
            out.push((format!("mixed {pattern:?} n={n}"), generate_mixed_perturbed(n, pattern, 0.0, 0).unwrap()));
            for seed in [1, 2] {
                out.push((
                    format!("mixed {pattern:?} n={n} seed={seed}"),
                    generate_mixed_perturbed(n, pattern, 0.2, seed).unwrap(),
                ));
            }
        }
    }
    out
}

#[test]
fn exactness_and_commutativity_on_suite() {
    for (name, mesh) in suite_meshes() {
        let r = run_complex_check(&mesh).unwrap();
        assert!(r.passed(), "{name}: {:?}", r.first_failure());
        let c = mesh.counts();
        assert_eq!(r.rank_div, 3 * c.quads + c.triangles - 1, "{name}");
        assert_eq!(r.kernel_dim, c.interior_edges + c.interior_vertices, "{name}");
        assert_eq!(r.kernel_dim + r.rank_div, r.dim_velocity, "{name}");
        assert!(r.commutativity_curl.unwrap() <= 1e-10 && r.commutativity_div.unwrap() <= 1e-10, "{name}");
    }
}

#[test]
fn curl_of_each_stream_basis_function_is_discretely_divergence_free() {
    let mesh = generate_mixed_perturbed(4, MixedPattern::HalfSplit, 0.2, 3).unwrap();
    let stream = FeSpace::new(&mesh, SpaceKind::Morley0).unwrap();
    let velocity = FeSpace::vector(&mesh, SpaceKind::Qltz0).unwrap();
    let pressure = FeSpace::new(&mesh, SpaceKind::Pressure).unwrap();
    let b = assemble_div(&velocity, &pressure).unwrap();
    for i in 0..stream.ndofs() {
        let mut c = vec![0.0; stream.ndofs()];
        c[i] = 1.0;
        let v = curl_morley(&velocity, &FeFunction::new(&stream, c)).unwrap();
        let worst = b.mul_vec(v.coeffs()).iter().fold(0.0f64, |m, x| m.max(x.abs()));
        assert!(worst <= 1e-11, "basis {i}: {worst}");
        // and pointwise: the broken divergence vanishes
        let p = mesh.cell_points(0).iter().fold(Point::origin(), |a, q| a + q.coords / mesh.cell(0).vertices.len() as f64);
        assert!(v.div(0, p).unwrap().abs() < 1e-10);
    }
}

#[test]
fn small_grid_report_values() {
    let r = check_exact_sequence(&generate_structured_quads(2)).unwrap();
    assert_eq!((r.dim_velocity, r.rank_div, r.kernel_dim, r.dim_stream), (16, 11, 5, 5));
    let r = check_exact_sequence(&generate_mixed_perturbed(2, MixedPattern::Checkerboard, 0.0, 0).unwrap()).unwrap();
    assert_eq!((r.dim_velocity, r.rank_div, r.kernel_dim), (16, 9, 7));
    let r = check_exact_sequence(&generate_structured_quads(1)).unwrap();
    assert_eq!((r.dim_velocity, r.rank_div, r.kernel_dim, r.dim_stream), (2, 2, 0, 0));
}

#[test]
fn corrupted_divergence_is_detected() {
    let mesh = generate_structured_quads(2);
    let r = analyze_complex_with(&mesh, Corruption::ZeroDivEntry).unwrap();
    assert!(!r.passed());
    assert!(matches!(r.into_result(), Err(Error::CheckFailed(_))));
}

#[test]
fn json_report_is_self_consistent() {
    let r = run_complex_check(&generate_structured_quads(2)).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["rank_div"], 11);
    assert_eq!(
        v["kernel_dim"].as_u64().unwrap() + v["rank_div"].as_u64().unwrap(),
        v["dim_velocity"].as_u64().unwrap()
    );
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn mesh_with_hole_is_flagged() {
    let full = generate_structured_quads(3);
    let mut cells = full.connectivity();
    cells.remove(4);
    let ring = Mesh::new(full.vertices().to_vec(), cells).unwrap();
    let r = quadfem::complex::analyze_complex(&ring).unwrap();
    assert_eq!(r.first_failure().map(|c| c.name.as_str()), Some("simply connected"));
}

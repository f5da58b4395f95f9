mod common;

use common::oracles::dimension_identities;
use proptest::prelude::*;
use quadfem::mesh::{
    format_mesh, generate_mixed_perturbed, generate_perturbed_quads, generate_structured_quads, parse_mesh,
    read_mesh, write_mesh, CellKind, Mesh, MixedPattern,
};
use quadfem::Error;

fn pattern(k: u8) -> MixedPattern {
    match k % 4 {
        0 => MixedPattern::None,
        1 => MixedPattern::All,
        2 => MixedPattern::Checkerboard,
        _ => MixedPattern::HalfSplit,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn euler_and_dimension_identities(n in 1usize..9, k in 0u8..4, perturbed in any::<bool>(), seed in 0u64..1000) {
        let mag = if perturbed { 0.2 } else { 0.0 };
        let mesh = generate_mixed_perturbed(n, pattern(k), mag, seed).unwrap();
        prop_assert_eq!(dimension_identities(&mesh), Ok(()));
    }

    #[test]
    fn perturbed_frames_are_regular(n in 2usize..9, seed in 0u64..1000) {
        let mesh = generate_perturbed_quads(n, 0.2, seed).unwrap();
        for c in 0..mesh.n_cells() {
            let f = mesh.frame(c).unwrap();
            prop_assert!(f.shape_regularity() >= 1.0);
            prop_assert!(f.alpha.abs() + f.beta.abs() <= 0.8);
            for (a, b) in f.vertices().iter().zip(f.reconstruct_vertices()) {
                prop_assert!((a - b).norm() < 1e-13);
            }
            // the local coordinates are affine: vertices land on their tabulated values
            for (p, (eta, xi)) in f.vertices().iter().zip(f.vertex_coords()) {
                let (x, y) = f.xi_eta(*p);
                prop_assert!((x - xi).abs() < 1e-12 && (y - eta).abs() < 1e-12);
            }
            let mid = nalgebra::center(&f.vertices()[0], &f.vertices()[2]);
            let (x0, y0) = f.xi_eta(f.vertices()[0]);
            let (x2, y2) = f.xi_eta(f.vertices()[2]);
            let (xm, ym) = f.xi_eta(mid);
            prop_assert!((xm - 0.5 * (x0 + x2)).abs() < 1e-12 && (ym - 0.5 * (y0 + y2)).abs() < 1e-12);
        }
    }

    #[test]
    fn text_format_round_trip(n in 1usize..6, k in 0u8..4, seed in 0u64..100) {
        let mesh = generate_mixed_perturbed(n, pattern(k), 0.15, seed).unwrap();
        let back = parse_mesh(&format_mesh(&mesh)).unwrap();
        prop_assert_eq!(back, mesh);
    }
}

#[test]
fn small_grid_counts() {
    let c = generate_structured_quads(2).counts();
    assert_eq!((c.cells, c.vertices, c.edges, c.interior_edges, c.interior_vertices), (4, 9, 12, 4, 1));
    let c = generate_structured_quads(1).counts();
    assert_eq!((c.interior_edges, c.interior_vertices), (0, 0));
}

#[test]
fn edges_shared_with_opposite_orientation() {
    let mesh = generate_mixed_perturbed(4, MixedPattern::Checkerboard, 0.2, 3).unwrap();
    for (e, edge) in mesh.edges().iter().enumerate() {
        assert_eq!(edge.boundary, edge.cells.len() == 1);
        if edge.cells.len() == 2 {
            let signs: Vec<i8> = edge
                .cells
                .iter()
                .map(|&c| {
                    let cell = mesh.cell(c);
                    let i = cell.edges.iter().position(|&x| x == e).unwrap();
                    cell.edge_signs[i]
                })
                .collect();
            assert_eq!(signs[0], -signs[1]);
        }
        assert!((edge.normal.dot(&edge.tangent)).abs() < 1e-15);
        assert!((edge.normal.norm() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.mesh");
    let mesh = generate_perturbed_quads(3, 0.2, 5).unwrap();
    write_mesh(&mesh, &path).unwrap();
    assert_eq!(read_mesh(&path).unwrap(), mesh);
    assert!(matches!(read_mesh(dir.path().join("missing")), Err(Error::Io(_))));
}

#[test]
fn rejects_invalid_cells() {
    let square = vec![
        quadfem::Point::new(0., 0.),
        quadfem::Point::new(1., 0.),
        quadfem::Point::new(1., 1.),
        quadfem::Point::new(0., 1.),
    ];
    assert!(Mesh::new(square.clone(), vec![(CellKind::Quad, vec![0, 1, 2, 3])]).is_ok());
    assert!(matches!(
        Mesh::new(square.clone(), vec![(CellKind::Quad, vec![0, 3, 2, 1])]),
        Err(Error::BadOrientation { cell: Some(0) })
    ));
    let flat = vec![
        quadfem::Point::new(0., 0.),
        quadfem::Point::new(1., 0.),
        quadfem::Point::new(2., 0.),
    ];
    assert!(Mesh::new(flat, vec![(CellKind::Triangle, vec![0, 1, 2])]).is_err());
}

#[test]
fn bundled_meshes_load() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    let mut found = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "mesh") {
            let mesh = read_mesh(&path).unwrap();
            assert_eq!(dimension_identities(&mesh), Ok(()), "{}", path.display());
            found += 1;
        }
    }
    assert!(found >= 3);
}

//! Discrete Stokes complex: Morley stream functions, QLTZ velocities and
//! discontinuous pressures. Checks exactness and the commuting diagram.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::assembly::assemble_div;
use crate::elements::quadrature::cell_rule;
use crate::error::{Error, Result};
use crate::mesh::{CellKind, Mesh, MeshCounts};
use crate::spaces::{
    interpolate_morley, interpolate_qltz_vector, l2_project_pressure, l2_project_pressure_cellwise,
    FeFunction, FeSpace, SpaceKind,
};
use crate::{Point, Vector};

/// Relative singular-value threshold for rank decisions.
pub const RANK_TOL: f64 = 1e-9;
/// Absolute tolerance for `B · curl g = 0`.
pub const COMPOSITION_TOL: f64 = 1e-11;

/// Numerical rank with threshold `RANK_TOL · σ_max`.
pub fn numerical_rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().singular_values();
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_TOL * smax).count()
}

/// QLTZ coefficients of `curl_h g` for a Morley function `g`. Edge means come
/// from the Morley DOFs, `⨍_e curl g = (⨍ ∂_τ g) n_e - (⨍ ∂_n g) τ_e`; cell
/// means of quadrilaterals are integrated from the local polynomial.
pub fn curl_morley<'a>(velocity: &'a FeSpace<'a>, g: &FeFunction<'_>) -> Result<FeFunction<'a>> {
    let morley = g.space();
    if !velocity.same_mesh(morley) {
        return Err(Error::IncompatibleMesh("Morley and velocity spaces on different meshes".into()));
    }
    if !morley.kind().is_morley() || !velocity.kind().is_qltz() || velocity.components() != 2 {
        return Err(Error::Config("curl maps a Morley space into a vector QLTZ space".into()));
    }
    let mesh = velocity.mesh();
    let (mmap, vmap) = (morley.dofmap(), velocity.dofmap());
    let n = vmap.n_scalar();
    let gc = g.coeffs();
    let vertex_value = |v: usize| mmap.vertex_dof(v).map_or(0.0, |d| gc[d]);
    let mut out = vec![0.0; vmap.ndofs()];
    for (e, edge) in mesh.edges().iter().enumerate() {
        let Some(d) = vmap.edge_dof(e) else { continue };
        let [lo, hi] = edge.vertices;
        let dtau = (vertex_value(hi) - vertex_value(lo)) / edge.length;
        let dn = mmap.edge_dof(e).map_or(0.0, |k| gc[k]);
        let mean = edge.normal * dtau - edge.tangent * dn;
        out[d] = mean.x;
        out[n + d] = mean.y;
    }
    for (c, cell) in mesh.cells().iter().enumerate() {
        if cell.kind != CellKind::Quad {
            continue;
        }
        let rule = cell_rule(mesh, c, 2)?;
        let local = g.local_coeffs(c, 0);
        let basis = morley.basis(c);
        let mut acc = Vector::zeros();
        for (&p, &w) in rule.points.iter().zip(&rule.weights) {
            let grad = basis.combine(&local, p).1;
            acc += w * Vector::new(grad.y, -grad.x);
        }
        acc /= rule.total_weight();
        let d = vmap.cell_entity_dofs(c)[0];
        out[d] = acc.x;
        out[n + d] = acc.y;
    }
    Ok(FeFunction::new(velocity, out))
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexReport {
    pub cells: usize,
    pub quads: usize,
    pub triangles: usize,
    pub vertices: usize,
    pub edges: usize,
    pub interior_edges: usize,
    pub interior_vertices: usize,
    pub dim_stream: usize,
    pub dim_velocity: usize,
    pub dim_pressure: usize,
    pub rank_div: usize,
    pub kernel_dim: usize,
    pub curl_rank: usize,
    pub composition_defect: f64,
    pub commutativity_curl: Option<f64>,
    pub commutativity_div: Option<f64>,
    pub checks: Vec<Check>,
}

impl ComplexReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// `Err(CheckFailed)` naming the first violated check.
    pub fn into_result(self) -> Result<Self> {
        match self.first_failure() {
            Some(c) => Err(Error::CheckFailed(format!("{}: {}", c.name, c.detail))),
            None => Ok(self),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "mesh: {} cells ({} quads, {} triangles), {} vertices ({} interior), {} edges ({} interior)",
            self.cells, self.quads, self.triangles, self.vertices, self.interior_vertices, self.edges, self.interior_edges
        );
        let _ = writeln!(
            s,
            "dim M_h0 = {}, dim V_h0 = {}, dim W_h0 = {}",
            self.dim_stream, self.dim_velocity, self.dim_pressure
        );
        let _ = writeln!(
            s,
            "rank(div) = {}, dim ker(div) = {}, rank(curl) = {}, max |B curl g| = {:.3e}",
            self.rank_div, self.kernel_dim, self.curl_rank, self.composition_defect
        );
        if let (Some(a), Some(b)) = (self.commutativity_curl, self.commutativity_div) {
            let _ = writeln!(s, "commutativity defects: curl {a:.3e}, div {b:.3e}");
        }
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Spaces of the complex on one mesh: `M_h0 → V_h0 → W_h` (W_h with all
/// DOFs; its zero-mean subspace has one dimension less).
struct Complex<'m> {
    stream: FeSpace<'m>,
    velocity: FeSpace<'m>,
    pressure: FeSpace<'m>,
}

impl<'m> Complex<'m> {
    fn new(mesh: &'m Mesh) -> Result<Self> {
        Ok(Self {
            stream: FeSpace::new(mesh, SpaceKind::Morley0)?,
            velocity: FeSpace::vector(mesh, SpaceKind::Qltz0)?,
            pressure: FeSpace::new(mesh, SpaceKind::Pressure)?,
        })
    }

    /// Columns: velocity coefficients of `curl` of every Morley basis function.
    fn curl_matrix(&self) -> Result<DMatrix<f64>> {
        let (nm, nv) = (self.stream.ndofs(), self.velocity.ndofs());
        let mut m = DMatrix::zeros(nv, nm);
        for j in 0..nm {
            let mut e = vec![0.0; nm];
            e[j] = 1.0;
            let g = FeFunction::new(&self.stream, e);
            let v = curl_morley(&self.velocity, &g)?;
            m.column_mut(j).copy_from_slice(v.coeffs());
        }
        Ok(m)
    }
}

/// Corruption applied to the divergence matrix before the checks; used by
/// negative-control tests.
#[doc(hidden)]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Corruption {
    #[default]
    None,
    /// Zero the entry of `B` that most affects `B · curl`.
    ZeroDivEntry,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

/// Exactness checks of the complex. Check failures are recorded in the
/// report; `Err` is returned only when the computation itself fails.
pub fn analyze_complex(mesh: &Mesh) -> Result<ComplexReport> {
    analyze_complex_with(mesh, Corruption::None)
}

/// Like [`analyze_complex`], but fails with `CheckFailed` on the first violation.
pub fn check_exact_sequence(mesh: &Mesh) -> Result<ComplexReport> {
    analyze_complex(mesh)?.into_result()
}

#[doc(hidden)]
pub fn analyze_complex_with(mesh: &Mesh, corruption: Corruption) -> Result<ComplexReport> {
    let cx = Complex::new(mesh)?;
    let counts: MeshCounts = mesh.counts();
    let mut b = assemble_div(&cx.velocity, &cx.pressure)?.to_dense();
    let curl = cx.curl_matrix()?;
    if corruption == Corruption::ZeroDivEntry && b.nrows() > 0 && b.ncols() > 0 {
        let weight = |c: usize| curl.row(c).iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let mut best = (0, 0, -1.0);
        for r in 0..b.nrows() {
            for c in 0..b.ncols() {
                let s = b[(r, c)].abs() * weight(c);
                if s > best.2 {
                    best = (r, c, s);
                }
            }
        }
        b[(best.0, best.1)] = 0.0;
    }

    let dim_stream = cx.stream.ndofs();
    let dim_velocity = cx.velocity.ndofs();
    let dim_pressure = cx.pressure.ndofs() - 1;
    let rank_div = numerical_rank(&b);
    let kernel_dim = dim_velocity - rank_div;
    let curl_rank = numerical_rank(&curl);
    let composition = &b * &curl;
    let composition_defect = composition.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let expected = counts.interior_edges + counts.interior_vertices;

    // the curl images lie in the kernel and span it iff [curl | kernel basis] has rank kernel_dim
    let checks = vec![
        // with holes the dimension counts acquire topology terms not covered here
        check(
            "simply connected",
            counts.euler_holds(),
            format!("F + X = {}, E + 1 = {}", counts.cells + counts.vertices, counts.edges + 1),
        ),
        check(
            "div surjective",
            rank_div == dim_pressure,
            format!("rank(B) = {rank_div}, dim W_h0 = {dim_pressure}"),
        ),
        check(
            "kernel dimension",
            kernel_dim == expected && expected == dim_stream,
            format!("dim ker(B) = {kernel_dim}, E_I + X_I = {expected}, dim M_h0 = {dim_stream}"),
        ),
        check(
            "curl into kernel",
            composition_defect <= COMPOSITION_TOL,
            format!("max |B curl g| = {composition_defect:.3e}"),
        ),
        check(
            "curl injective",
            curl_rank == dim_stream,
            format!("rank(curl) = {curl_rank}, dim M_h0 = {dim_stream}"),
        ),
        check(
            "curl onto kernel",
            curl_rank == kernel_dim,
            format!("rank(curl) = {curl_rank}, dim ker(B) = {kernel_dim}"),
        ),
    ];

    Ok(ComplexReport {
        cells: counts.cells,
        quads: counts.quads,
        triangles: counts.triangles,
        vertices: counts.vertices,
        edges: counts.edges,
        interior_edges: counts.interior_edges,
        interior_vertices: counts.interior_vertices,
        dim_stream,
        dim_velocity,
        dim_pressure,
        rank_div,
        kernel_dim,
        curl_rank,
        composition_defect,
        commutativity_curl: None,
        commutativity_div: None,
        checks,
    })
}

/// A smooth stream function with its gradient, and a smooth vector field with
/// its divergence.
pub struct CommutativityData<'f> {
    pub stream: &'f dyn Fn(Point) -> (f64, Vector),
    pub field: &'f dyn Fn(Point) -> Vector,
    pub divergence: &'f dyn Fn(Point) -> f64,
}

/// `(max |curl_h Π^M φ - Π^V curl φ|, max |div_h Π^V v - Π^0 div v|)` as
/// coefficient differences on the unconstrained spaces.
pub fn check_commutativity(mesh: &Mesh, data: &CommutativityData<'_>) -> Result<(f64, f64)> {
    let stream = FeSpace::new(mesh, SpaceKind::Morley)?;
    let velocity = FeSpace::vector(mesh, SpaceKind::Qltz)?;
    let pressure = FeSpace::new(mesh, SpaceKind::Pressure)?;

    let g = interpolate_morley(&stream, data.stream)?;
    let left = curl_morley(&velocity, &g)?;
    let right = interpolate_qltz_vector(&velocity, |p| {
        let grad = (data.stream)(p).1;
        Vector::new(grad.y, -grad.x)
    })?;
    let defect_curl = max_diff(left.coeffs(), right.coeffs());

    let v = interpolate_qltz_vector(&velocity, data.field)?;
    let left = l2_project_pressure_cellwise(&pressure, |c, p| {
        let (u0, u1) = (v.local_coeffs(c, 0), v.local_coeffs(c, 1));
        let basis = velocity.basis(c);
        basis.combine(&u0, p).1.x + basis.combine(&u1, p).1.y
    })?;
    let right = l2_project_pressure(&pressure, data.divergence)?;
    let defect_div = max_diff(left.coeffs(), right.coeffs());
    Ok((defect_curl, defect_div))
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

//! Inf-sup tabulation and the complex check driver.

use std::fmt::Write as _;

use super::convergence::GridConfig;
use crate::assembly::{assemble_div, assemble_pressure_mass, assemble_stiffness};
use crate::complex::{analyze_complex, check_commutativity, Check, CommutativityData, ComplexReport};
use crate::error::Result;
use crate::mesh::Mesh;
use crate::solver::estimate_infsup;
use crate::spaces::{FeSpace, SpaceKind};
use crate::{Point, Vector};

/// Tolerance on commutativity defects for polynomial data.
pub const COMMUTATIVITY_TOL: f64 = 1e-10;

/// Discrete inf-sup constant of the `V_h0 × W_h0` pair on `mesh`.
pub fn infsup_constant(mesh: &Mesh) -> Result<f64> {
    let velocity = FeSpace::vector(mesh, SpaceKind::Qltz0)?;
    let pressure = FeSpace::new(mesh, SpaceKind::Pressure)?;
    let a = assemble_stiffness(&velocity)?;
    let b = assemble_div(&velocity, &pressure)?;
    let m = assemble_pressure_mass(&pressure)?;
    estimate_infsup(&a, &b, &m, &pressure.pressure_constant())
}

#[derive(Debug, Clone, PartialEq)]
pub struct InfsupRow {
    pub n: usize,
    pub dim_p: usize,
    pub gamma: f64,
    /// `γ_n / γ_previous`.
    pub ratio: Option<f64>,
}

pub fn run_infsup(grid: &GridConfig, levels: &[usize]) -> Result<Vec<InfsupRow>> {
    let mut rows: Vec<InfsupRow> = Vec::new();
    for &n in levels {
        let mesh = grid.mesh(n)?;
        let gamma = infsup_constant(&mesh)?;
        let ratio = rows.last().map(|r| gamma / r.gamma);
        let dim_p = FeSpace::new(&mesh, SpaceKind::Pressure0)?.dofmap().dim();
        rows.push(InfsupRow { n, dim_p, gamma, ratio });
    }
    Ok(rows)
}

pub fn infsup_csv(rows: &[InfsupRow]) -> String {
    let mut s = String::from("n,dim_p,gamma,ratio\n");
    for r in rows {
        let ratio = r.ratio.map(|x| format!("{x:.6}")).unwrap_or_default();
        let _ = writeln!(s, "{},{},{:.10e},{}", r.n, r.dim_p, r.gamma, ratio);
    }
    s
}

fn bump(x: f64) -> (f64, f64) {
    (x * x * (1.0 - x) * (1.0 - x), 2.0 * x - 6.0 * x * x + 4.0 * x * x * x)
}

/// Exactness checks plus the commuting diagram for the bubble
/// `x²(1-x)²y²(1-y)²` and the field `(x², xy)`.
pub fn run_complex_check(mesh: &Mesh) -> Result<ComplexReport> {
    let mut report = analyze_complex(mesh)?;
    let stream = |p: Point| {
        let ((a, da), (b, db)) = (bump(p.x), bump(p.y));
        (a * b, Vector::new(da * b, a * db))
    };
    let field = |p: Point| Vector::new(p.x * p.x, p.x * p.y);
    let divergence = |p: Point| 3.0 * p.x;
    let (curl, div) = check_commutativity(
        mesh,
        &CommutativityData { stream: &stream, field: &field, divergence: &divergence },
    )?;
    report.commutativity_curl = Some(curl);
    report.commutativity_div = Some(div);
    report.checks.push(Check {
        name: "curl commutes".into(),
        passed: curl <= COMMUTATIVITY_TOL,
        detail: format!("max coefficient defect {curl:.3e}"),
    });
    report.checks.push(Check {
        name: "div commutes".into(),
        passed: div <= COMMUTATIVITY_TOL,
        detail: format!("max coefficient defect {div:.3e}"),
    });
    Ok(report)
}

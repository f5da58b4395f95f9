//! Refinement studies against manufactured solutions.

use std::fmt::Write as _;

use super::manufactured::{
    biharmonic_rhs, bubble, poisson_exact, poisson_rhs, stokes_pressure, stokes_rhs, stokes_velocity,
};
use crate::assembly::{
    assemble_div, assemble_hessian, assemble_load, assemble_pressure_mean, assemble_stiffness,
    assemble_vector_load, div_norm, error_norm, fe_norm, Norm,
};
use crate::error::{Error, Result};
use crate::mesh::{generate_mixed_perturbed, Mesh, MixedPattern};
use crate::solver::{solve_spd, solve_stokes, DEFAULT_TOL};
use crate::spaces::{FeFunction, FeSpace, SpaceKind};

/// `‖div_h u_h‖ ≤ DIV_FREE_TOL · |u_h|_{1,h}` is required of every Stokes solution.
pub const DIV_FREE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Problem {
    Poisson,
    Stokes,
    Biharmonic,
}

impl std::str::FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poisson" => Ok(Problem::Poisson),
            "stokes" => Ok(Problem::Stokes),
            "biharmonic" => Ok(Problem::Biharmonic),
            other => Err(Error::Config(format!("unknown problem '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Quad,
    PerturbedQuad,
    Mixed,
}

impl std::str::FromStr for GridKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quad" => Ok(GridKind::Quad),
            "perturbed-quad" | "perturbed" => Ok(GridKind::PerturbedQuad),
            "mixed" => Ok(GridKind::Mixed),
            other => Err(Error::Config(format!("unknown grid '{other}'"))),
        }
    }
}

/// Mesh family: kind, split pattern for mixed grids, perturbation and seed.
/// Level `n` is perturbed independently with seed `seed + n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub kind: GridKind,
    pub pattern: MixedPattern,
    pub perturb: f64,
    pub seed: u64,
}

impl GridConfig {
    pub fn quad() -> Self {
        Self { kind: GridKind::Quad, pattern: MixedPattern::None, perturb: 0.0, seed: 0 }
    }

    pub fn perturbed(magnitude: f64, seed: u64) -> Self {
        Self { kind: GridKind::PerturbedQuad, pattern: MixedPattern::None, perturb: magnitude, seed }
    }

    pub fn mixed(pattern: MixedPattern, magnitude: f64, seed: u64) -> Self {
        Self { kind: GridKind::Mixed, pattern, perturb: magnitude, seed }
    }

    pub fn mesh(&self, n: usize) -> Result<Mesh> {
        let (pattern, perturb) = match self.kind {
            GridKind::Quad => (MixedPattern::None, 0.0),
            GridKind::PerturbedQuad => (MixedPattern::None, self.perturb),
            GridKind::Mixed => (self.pattern, self.perturb),
        };
        generate_mixed_perturbed(n, pattern, perturb, self.seed.wrapping_add(n as u64))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub problem: Problem,
    pub grid: GridConfig,
    pub levels: Vec<usize>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.levels.is_empty() {
            return Err(Error::Config("no refinement levels".into()));
        }
        if self.levels.contains(&0) || self.levels.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("levels must be positive and strictly increasing".into()));
        }
        if !(0.0..=0.3).contains(&self.grid.perturb) {
            return Err(Error::Config(format!("perturbation {} outside [0, 0.3]", self.grid.perturb)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceRow {
    pub n: usize,
    pub h: f64,
    pub dof_u: usize,
    pub dof_p: Option<usize>,
    pub err_l2: f64,
    pub err_h1: f64,
    pub err_p_l2: Option<f64>,
    pub err_h2: Option<f64>,
    pub rate_l2: Option<f64>,
    pub rate_h1: Option<f64>,
    pub rate_p: Option<f64>,
    pub rate_h2: Option<f64>,
    /// `‖div_h u_h‖ / |u_h|_{1,h}` for Stokes.
    pub div_ratio: Option<f64>,
}

/// Observed order between two levels.
pub fn rate(e_coarse: f64, e_fine: f64, h_coarse: f64, h_fine: f64) -> f64 {
    (e_coarse / e_fine).ln() / (h_coarse / h_fine).ln()
}

fn solve_level(problem: Problem, mesh: &Mesh, n: usize) -> Result<ConvergenceRow> {
    let h = 1.0 / n as f64;
    let mut row = ConvergenceRow { n, h, ..Default::default() };
    match problem {
        Problem::Poisson => {
            let space = FeSpace::new(mesh, SpaceKind::Qltz0)?;
            let a = assemble_stiffness(&space)?;
            let b = assemble_load(&space, poisson_rhs)?;
            let sol = solve_spd(&a, &b, DEFAULT_TOL)?;
            let u = FeFunction::new(&space, sol.solution);
            row.dof_u = space.ndofs();
            row.err_l2 = error_norm(&u, |p, _| poisson_exact(p), Norm::L2)?;
            row.err_h1 = error_norm(&u, |p, _| poisson_exact(p), Norm::H1Broken)?;
        }
        Problem::Biharmonic => {
            let space = FeSpace::new(mesh, SpaceKind::Morley0)?;
            let k = assemble_hessian(&space)?;
            let b = assemble_load(&space, biharmonic_rhs)?;
            let sol = solve_spd(&k, &b, DEFAULT_TOL)?;
            let u = FeFunction::new(&space, sol.solution);
            row.dof_u = space.ndofs();
            row.err_l2 = error_norm(&u, |p, _| bubble(p), Norm::L2)?;
            row.err_h1 = error_norm(&u, |p, _| bubble(p), Norm::H1Broken)?;
            row.err_h2 = Some(error_norm(&u, |p, _| bubble(p), Norm::H2Broken)?);
        }
        Problem::Stokes => {
            let velocity = FeSpace::vector(mesh, SpaceKind::Qltz0)?;
            let pressure = FeSpace::new(mesh, SpaceKind::Pressure)?;
            let a = assemble_stiffness(&velocity)?;
            let b = assemble_div(&velocity, &pressure)?;
            let mean = assemble_pressure_mean(&pressure)?;
            let f = assemble_vector_load(&velocity, stokes_rhs)?;
            let sol = solve_stokes(&a, &b, &mean, &f, DEFAULT_TOL)?;
            let u = FeFunction::new(&velocity, sol.velocity);
            let p = FeFunction::new(&pressure, sol.pressure);
            row.dof_u = velocity.ndofs();
            row.dof_p = Some(pressure.ndofs() - 1);
            row.err_l2 = error_norm(&u, stokes_velocity, Norm::L2)?;
            row.err_h1 = error_norm(&u, stokes_velocity, Norm::H1Broken)?;
            row.err_p_l2 = Some(error_norm(&p, |q, _| stokes_pressure(q), Norm::L2)?);
            let ratio = div_norm(&u)? / fe_norm(&u, Norm::H1Broken)?.max(f64::MIN_POSITIVE);
            row.div_ratio = Some(ratio);
            if ratio > DIV_FREE_TOL {
                return Err(Error::CheckFailed(format!(
                    "n = {n}: ‖div_h u_h‖ / |u_h|_1,h = {ratio:.3e} exceeds {DIV_FREE_TOL:e}"
                )));
            }
        }
    }
    Ok(row)
}

/// Solves every level and fills in observed rates.
pub fn run_convergence(config: &ExperimentConfig) -> Result<Vec<ConvergenceRow>> {
    config.validate()?;
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(config.levels.len());
    for &n in &config.levels {
        let mesh = config.grid.mesh(n)?;
        let mut row = solve_level(config.problem, &mesh, n)?;
        if let Some(prev) = rows.last() {
            let r = |a: f64, b: f64| rate(a, b, prev.h, row.h);
            row.rate_l2 = Some(r(prev.err_l2, row.err_l2));
            row.rate_h1 = Some(r(prev.err_h1, row.err_h1));
            row.rate_p = prev.err_p_l2.zip(row.err_p_l2).map(|(a, b)| r(a, b));
            row.rate_h2 = prev.err_h2.zip(row.err_h2).map(|(a, b)| r(a, b));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6e}")).unwrap_or_default()
}

fn opt_rate(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.4}")).unwrap_or_default()
}

/// CSV with header `n,h,dof_u,dof_p,err_l2,err_h1,err_p_l2,rate_l2,rate_h1,rate_p`;
/// biharmonic tables append `err_h2,rate_h2`.
pub fn to_csv(problem: Problem, rows: &[ConvergenceRow]) -> String {
    let mut s = String::from("n,h,dof_u,dof_p,err_l2,err_h1,err_p_l2,rate_l2,rate_h1,rate_p");
    let h2 = problem == Problem::Biharmonic;
    if h2 {
        s.push_str(",err_h2,rate_h2");
    }
    s.push('\n');
    for r in rows {
        let _ = write!(
            s,
            "{},{:.6e},{},{},{:.6e},{:.6e},{},{},{},{}",
            r.n,
            r.h,
            r.dof_u,
            r.dof_p.map(|d| d.to_string()).unwrap_or_default(),
            r.err_l2,
            r.err_h1,
            opt(r.err_p_l2),
            opt_rate(r.rate_l2),
            opt_rate(r.rate_h1),
            opt_rate(r.rate_p),
        );
        if h2 {
            let _ = write!(s, ",{},{}", opt(r.err_h2), opt_rate(r.rate_h2));
        }
        s.push('\n');
    }
    s
}

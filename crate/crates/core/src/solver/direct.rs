//! Sparse direct solves for the SPD and saddle-point systems.

use faer::linalg::solvers::Solve;
use faer::{Mat, Side};

use super::krylov::{cg, minres};
use crate::assembly::SparseMatrix;
use crate::error::{Error, Result};

/// Largest system solved by direct factorization.
pub const DIRECT_LIMIT: usize = 200_000;
pub const DEFAULT_TOL: f64 = 1e-10;
const REFINEMENT_STEPS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Trivial,
    Cholesky,
    Lu,
    Cg,
    Minres,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub solution: Vec<f64>,
    /// `‖Ax - b‖ / ‖b‖`.
    pub residual: f64,
    pub method: Method,
    /// Krylov iterations or refinement steps.
    pub iterations: usize,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn relative_residual(a: &SparseMatrix, x: &[f64], b: &[f64]) -> f64 {
    let ax = a.mul_vec(x);
    let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
    let bn = norm(b);
    if bn == 0.0 {
        norm(&r)
    } else {
        norm(&r) / bn
    }
}

/// Solves with a factorization and a few steps of iterative refinement.
fn refine(
    a: &SparseMatrix,
    b: &[f64],
    tol: f64,
    solve: impl Fn(&[f64]) -> Vec<f64>,
) -> (Vec<f64>, f64, usize) {
    let mut x = solve(b);
    let mut res = relative_residual(a, &x, b);
    let mut steps = 0;
    while res > tol * 1e-2 && steps < REFINEMENT_STEPS {
        let ax = a.mul_vec(&x);
        let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect();
        let dx = solve(&r);
        let cand: Vec<f64> = x.iter().zip(&dx).map(|(xi, di)| xi + di).collect();
        let cand_res = relative_residual(a, &cand, b);
        steps += 1;
        if cand_res >= res {
            break;
        }
        x = cand;
        res = cand_res;
    }
    (x, res, steps)
}

fn to_col(v: &[f64]) -> Mat<f64> {
    Mat::from_fn(v.len(), 1, |i, _| v[i])
}

fn from_col(m: &Mat<f64>) -> Vec<f64> {
    (0..m.nrows()).map(|i| m[(i, 0)]).collect()
}

/// Reusable sparse Cholesky factor.
pub struct SpdFactor {
    llt: faer::sparse::linalg::solvers::Llt<usize, f64>,
}

impl SpdFactor {
    pub fn new(a: &SparseMatrix) -> Result<Self> {
        let llt = a
            .to_faer()?
            .sp_cholesky(Side::Lower)
            .map_err(|_| Error::NotPositiveDefinite)?;
        Ok(Self { llt })
    }

    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let mut x = to_col(b);
        self.llt.solve_in_place(x.as_mut());
        from_col(&x)
    }

    /// Solves for every column of `b` at once.
    pub fn solve_columns(&self, b: &mut Mat<f64>) {
        self.llt.solve_in_place(b.as_mut());
    }
}

fn check_square(a: &SparseMatrix, b: &[f64]) -> Result<()> {
    if a.nrows() != a.ncols() || a.nrows() != b.len() {
        return Err(Error::Config(format!(
            "system shape {}x{} does not match rhs length {}",
            a.nrows(),
            a.ncols(),
            b.len()
        )));
    }
    Ok(())
}

/// Solves an SPD system to relative residual `tol`: sparse Cholesky up to
/// [`DIRECT_LIMIT`] unknowns, Jacobi-preconditioned CG above.
pub fn solve_spd(a: &SparseMatrix, b: &[f64], tol: f64) -> Result<SolveReport> {
    check_square(a, b)?;
    let n = b.len();
    if n == 0 || b.iter().all(|&v| v == 0.0) {
        return Ok(SolveReport { solution: vec![0.0; n], residual: 0.0, method: Method::Trivial, iterations: 0 });
    }
    if n <= DIRECT_LIMIT {
        let factor = SpdFactor::new(a)?;
        let (x, res, steps) = refine(a, b, tol, |r| factor.solve(r));
        if !res.is_finite() {
            return Err(Error::NotPositiveDefinite);
        }
        if res > tol {
            return Err(Error::NoConvergence { iterations: steps, residual: res });
        }
        return Ok(SolveReport { solution: x, residual: res, method: Method::Cholesky, iterations: steps });
    }
    let diag: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    if diag.iter().any(|&d| d <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let r = cg(|x| a.mul_vec(x), |r| r.iter().zip(&diag).map(|(ri, di)| ri / di).collect(), b, tol, 10 * n)?;
    Ok(SolveReport { solution: r.x, residual: r.residual, method: Method::Cg, iterations: r.iterations })
}

/// Solves a symmetric indefinite system: sparse LU with partial pivoting up to
/// [`DIRECT_LIMIT`] unknowns, MINRES above.
pub fn solve_symmetric_indefinite(a: &SparseMatrix, b: &[f64], tol: f64) -> Result<SolveReport> {
    check_square(a, b)?;
    let n = b.len();
    if n == 0 || b.iter().all(|&v| v == 0.0) {
        return Ok(SolveReport { solution: vec![0.0; n], residual: 0.0, method: Method::Trivial, iterations: 0 });
    }
    if n <= DIRECT_LIMIT {
        let lu = a.to_faer()?.sp_lu().map_err(|_| Error::RankDeficient)?;
        let (x, res, steps) = refine(a, b, tol, |r| {
            let mut x = to_col(r);
            lu.solve_in_place(x.as_mut());
            from_col(&x)
        });
        if !res.is_finite() || res > 1e-4 {
            return Err(Error::RankDeficient);
        }
        if res > tol {
            return Err(Error::NoConvergence { iterations: steps, residual: res });
        }
        return Ok(SolveReport { solution: x, residual: res, method: Method::Lu, iterations: steps });
    }
    let r = minres(|x| a.mul_vec(x), b, tol, 20 * n)?;
    Ok(SolveReport { solution: r.x, residual: r.residual, method: Method::Minres, iterations: r.iterations })
}

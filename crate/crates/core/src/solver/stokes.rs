//! The Stokes saddle-point system with a mean-zero pressure multiplier, and
//! the discrete inf-sup constant.

use faer::Mat;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::direct::{solve_symmetric_indefinite, SolveReport, SpdFactor};
use super::krylov::cg;
use crate::assembly::SparseMatrix;
use crate::error::{Error, Result};

/// Largest pressure dimension handled by the dense eigensolver.
pub const DENSE_INFSUP_LIMIT: usize = 4000;

#[derive(Debug, Clone, PartialEq)]
pub struct StokesSolution {
    pub velocity: Vec<f64>,
    pub pressure: Vec<f64>,
    /// Multiplier of the mean-zero row; zero up to round-off.
    pub multiplier: f64,
    /// `‖A u - Bᵀ p - f‖ / ‖f‖`.
    pub momentum_residual: f64,
    /// `‖B u‖ / ‖f‖`.
    pub divergence_residual: f64,
    pub report: SolveReport,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Solves `a(u, v) - (div v, p) = (f, v)`, `(div u, q) = 0`, `∫ p = 0`:
///
/// ```text
/// [  A  -Bᵀ  0 ] [u]   [f]
/// [ -B   0   m ] [p] = [0]
/// [  0   mᵀ  0 ] [λ]   [0]
/// ```
///
/// with `m_i = ∫ ψ_i`.
pub fn solve_stokes(
    a: &SparseMatrix,
    b: &SparseMatrix,
    mean: &[f64],
    f: &[f64],
    tol: f64,
) -> Result<StokesSolution> {
    let (nv, np) = (a.nrows(), b.nrows());
    if b.ncols() != nv || mean.len() != np || f.len() != nv {
        return Err(Error::Config("inconsistent Stokes block sizes".into()));
    }
    let n = nv + np + 1;
    let mut t = a.triplets();
    for (r, c, v) in b.triplets() {
        t.push((nv + r, c, -v));
        t.push((c, nv + r, -v));
    }
    for (i, &m) in mean.iter().enumerate() {
        t.push((nv + i, n - 1, m));
        t.push((n - 1, nv + i, m));
    }
    let kkt = SparseMatrix::from_triplets(n, n, t);
    let mut rhs = f.to_vec();
    rhs.resize(n, 0.0);
    let report = solve_symmetric_indefinite(&kkt, &rhs, tol)?;

    let x = &report.solution;
    let velocity = x[..nv].to_vec();
    let pressure = x[nv..nv + np].to_vec();
    let multiplier = x[n - 1];
    let fnorm = norm(f).max(f64::MIN_POSITIVE);
    let au = a.mul_vec(&velocity);
    let btp = b.mul_transpose_vec(&pressure);
    let mom: Vec<f64> = (0..nv).map(|i| au[i] - btp[i] - f[i]).collect();
    let momentum_residual = if norm(f) == 0.0 { norm(&mom) } else { norm(&mom) / fnorm };
    let bu = b.mul_vec(&velocity);
    let divergence_residual = if norm(f) == 0.0 { norm(&bu) } else { norm(&bu) / fnorm };
    Ok(StokesSolution {
        velocity,
        pressure,
        multiplier,
        momentum_residual,
        divergence_residual,
        report,
    })
}

/// `γ_h = sqrt(λ_min)` of `B A⁻¹ Bᵀ q = λ M_p q` over pressures
/// `M_p`-orthogonal to `constant` (the coefficients of the function 1).
pub fn estimate_infsup(
    a: &SparseMatrix,
    b: &SparseMatrix,
    mass: &SparseMatrix,
    constant: &[f64],
) -> Result<f64> {
    let np = b.nrows();
    if np < 2 {
        return Err(Error::EigFailure("pressure space has no zero-mean functions".into()));
    }
    if constant.len() != np || mass.nrows() != np || a.nrows() != b.ncols() {
        return Err(Error::Config("inconsistent inf-sup block sizes".into()));
    }
    let factor = SpdFactor::new(a)?;
    if np <= DENSE_INFSUP_LIMIT {
        dense_infsup(&factor, b, mass, constant)
    } else {
        inverse_power_infsup(&factor, b, mass, constant)
    }
}

fn dense_infsup(factor: &SpdFactor, b: &SparseMatrix, mass: &SparseMatrix, constant: &[f64]) -> Result<f64> {
    let (np, nv) = (b.nrows(), b.ncols());
    let mut x = Mat::<f64>::zeros(nv, np);
    for (r, c, v) in b.triplets() {
        x[(c, r)] = v;
    }
    factor.solve_columns(&mut x);
    let mut s = DMatrix::zeros(np, np);
    for j in 0..np {
        for i in 0..np {
            s[(i, j)] = b.row(i).map(|(c, v)| v * x[(c, j)]).sum();
        }
    }
    let s = (&s + s.transpose()) * 0.5;

    let l = mass
        .to_dense()
        .cholesky()
        .ok_or(Error::EigFailure("pressure mass matrix is not positive definite".into()))?
        .l();
    let inv_l = l
        .clone()
        .solve_lower_triangular(&DMatrix::identity(np, np))
        .ok_or(Error::EigFailure("singular mass factor".into()))?;
    let mut c = &inv_l * s * inv_l.transpose();
    let mut u = l.transpose() * DVector::from_column_slice(constant);
    let un = u.norm();
    if un == 0.0 {
        return Err(Error::EigFailure("zero constant vector".into()));
    }
    u /= un;
    // lift the constant mode above the spectrum
    let shift = c.trace().max(1.0);
    c += shift * &u * u.transpose();
    let eig = SymmetricEigen::try_new(c, 1e-14, 10_000)
        .ok_or(Error::EigFailure("symmetric eigensolver did not converge".into()))?;
    let lmin = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    if !lmin.is_finite() {
        return Err(Error::EigFailure("non-finite eigenvalue".into()));
    }
    Ok(lmin.max(0.0).sqrt())
}

fn inverse_power_infsup(
    factor: &SpdFactor,
    b: &SparseMatrix,
    mass: &SparseMatrix,
    constant: &[f64],
) -> Result<f64> {
    let np = b.nrows();
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let schur = |q: &[f64]| b.mul_vec(&factor.solve(&b.mul_transpose_vec(q)));
    let mc = mass.mul_vec(constant);
    let cmc = dot(constant, &mc);
    // remove the constant component in the M-inner product
    let project = |q: &mut Vec<f64>| {
        let k = dot(&mc, q) / cmc;
        q.iter_mut().zip(constant).for_each(|(qi, ci)| *qi -= k * ci);
    };
    // remove the range component along M c from a right-hand side
    let project_rhs = |r: &mut Vec<f64>| {
        let k = dot(constant, r) / dot(constant, &mc);
        r.iter_mut().zip(&mc).for_each(|(ri, mi)| *ri -= k * mi);
    };

    let mut q: Vec<f64> = (0..np).map(|i| ((i * 7919) % 101) as f64 / 101.0 - 0.5).collect();
    project(&mut q);
    let mut lambda = f64::INFINITY;
    for _ in 0..200 {
        let mut r = mass.mul_vec(&q);
        project_rhs(&mut r);
        let mut y = cg(schur, |r| r.to_vec(), &r, 1e-12, 10 * np)?.x;
        project(&mut y);
        let my = mass.mul_vec(&y);
        let ymy = dot(&y, &my);
        if ymy <= 0.0 {
            return Err(Error::EigFailure("inverse iteration collapsed".into()));
        }
        let next = dot(&y, &schur(&y)) / ymy;
        let scale = ymy.sqrt();
        q = y.into_iter().map(|v| v / scale).collect();
        if (next - lambda).abs() <= 1e-10 * next.abs() {
            return Ok(next.max(0.0).sqrt());
        }
        lambda = next;
    }
    Err(Error::EigFailure("inverse iteration did not converge".into()))
}

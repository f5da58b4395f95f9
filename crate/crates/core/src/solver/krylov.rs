//! Conjugate gradients and MINRES on matrix-free operators.

use crate::error::{Error, Result};

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Result of a Krylov solve: solution, relative residual, iterations.
#[derive(Debug, Clone, PartialEq)]
pub struct KrylovResult {
    pub x: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

/// Preconditioned CG for SPD operators; `precond` applies `M⁻¹`.
pub fn cg(
    op: impl Fn(&[f64]) -> Vec<f64>,
    precond: impl Fn(&[f64]) -> Vec<f64>,
    b: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<KrylovResult> {
    let n = b.len();
    let bn = norm(b);
    if bn == 0.0 {
        return Ok(KrylovResult { x: vec![0.0; n], residual: 0.0, iterations: 0 });
    }
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z = precond(&r);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    for it in 1..=max_iter {
        let ap = op(&p);
        let pap = dot(&p, &ap);
        if pap <= 0.0 {
            return Err(Error::NotPositiveDefinite);
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let res = norm(&r) / bn;
        if res <= tol {
            return Ok(KrylovResult { x, residual: res, iterations: it });
        }
        z = precond(&r);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::NoConvergence { iterations: max_iter, residual: norm(&r) / bn })
}

/// Unpreconditioned MINRES for symmetric, possibly indefinite operators.
pub fn minres(op: impl Fn(&[f64]) -> Vec<f64>, b: &[f64], tol: f64, max_iter: usize) -> Result<KrylovResult> {
    let n = b.len();
    let bn = norm(b);
    let mut x = vec![0.0; n];
    if bn == 0.0 {
        return Ok(KrylovResult { x, residual: 0.0, iterations: 0 });
    }
    let true_residual = |x: &[f64]| {
        let ax = op(x);
        norm(&b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect::<Vec<_>>()) / bn
    };
    let mut r1 = b.to_vec();
    let mut r2 = b.to_vec();
    let (mut beta, mut oldb) = (bn, 0.0);
    let (mut dbar, mut epsln) = (0.0, 0.0);
    let (mut cs, mut sn) = (-1.0, 0.0);
    let mut phibar = bn;
    let mut w = vec![0.0; n];
    let mut w2 = vec![0.0; n];
    for it in 1..=max_iter {
        let v: Vec<f64> = r2.iter().map(|t| t / beta).collect();
        let mut y = op(&v);
        if it >= 2 {
            for i in 0..n {
                y[i] -= beta / oldb * r1[i];
            }
        }
        let alpha = dot(&v, &y);
        for i in 0..n {
            y[i] -= alpha / beta * r2[i];
        }
        r1 = std::mem::replace(&mut r2, y);
        oldb = beta;
        beta = norm(&r2);

        let oldeps = epsln;
        let delta = cs * dbar + sn * alpha;
        let gbar = sn * dbar - cs * alpha;
        epsln = sn * beta;
        dbar = -cs * beta;
        let gamma = (gbar * gbar + beta * beta).sqrt().max(f64::MIN_POSITIVE);
        cs = gbar / gamma;
        sn = beta / gamma;
        let phi = cs * phibar;
        phibar *= sn;

        let w1 = std::mem::replace(&mut w2, w.clone());
        for i in 0..n {
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
            x[i] += phi * w[i];
        }
        if phibar / bn <= tol || beta == 0.0 {
            let res = true_residual(&x);
            if res <= tol || beta == 0.0 {
                return Ok(KrylovResult { x, residual: res, iterations: it });
            }
        }
    }
    let res = true_residual(&x);
    if res <= tol {
        return Ok(KrylovResult { x, residual: res, iterations: max_iter });
    }
    Err(Error::NoConvergence { iterations: max_iter, residual: res })
}

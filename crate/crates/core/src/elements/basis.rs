//! Polynomial local bases expressed in monomials of affine cell coordinates.

use nalgebra::{DMatrix, Matrix2};

use super::quadrature::{edge_rule, polygon_rule};
use crate::error::{Error, Result};
use crate::{Point, Vector};

/// Condition-number bound above which a local DOF matrix is rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// Affine coordinates `u` with `p = origin + J u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineCoords {
    origin: Point,
    jac: Matrix2<f64>,
    inv: Matrix2<f64>,
}

impl AffineCoords {
    /// `p = origin + col0 * u0 + col1 * u1`.
    pub fn new(origin: Point, col0: Vector, col1: Vector) -> Result<Self> {
        let jac = Matrix2::from_columns(&[col0, col1]);
        let inv = jac.try_inverse().ok_or(Error::Degenerate { cell: None })?;
        Ok(Self { origin, jac, inv })
    }

    pub fn to_local(&self, p: Point) -> Vector {
        self.inv * (p - self.origin)
    }

    pub fn to_physical(&self, u: Vector) -> Point {
        self.origin + self.jac * u
    }

    /// `du/dp`.
    pub fn inverse_jacobian(&self) -> &Matrix2<f64> {
        &self.inv
    }

    pub fn grad_to_physical(&self, g: Vector) -> Vector {
        self.inv.transpose() * g
    }

    pub fn hessian_to_physical(&self, h: Matrix2<f64>) -> Matrix2<f64> {
        self.inv.transpose() * h * self.inv
    }
}

/// Exponent pairs `(i, j)` of monomials `u0^i u1^j`.
pub type Exponents = &'static [(u32, u32)];

pub const P0: Exponents = &[(0, 0)];
pub const P1: Exponents = &[(0, 0), (1, 0), (0, 1)];
pub const P2: Exponents = &[(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
/// `P1 + span{xi^2, eta^2}` with `(u0, u1) = (xi, eta)`.
pub const QLTZ: Exponents = &[(0, 0), (1, 0), (0, 1), (2, 0), (0, 2)];
/// `P2 + span{xi^3, eta^3}`.
pub const QUAD_MORLEY: Exponents = &[(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (0, 3)];

fn ipow(x: f64, k: u32) -> f64 {
    match k {
        0 => 1.0,
        1 => x,
        2 => x * x,
        3 => x * x * x,
        _ => x.powi(k as i32),
    }
}

/// Value, local gradient and local Hessian of `u0^i u1^j`.
pub fn monomial(i: u32, j: u32, u: Vector) -> (f64, Vector, Matrix2<f64>) {
    let (x, y) = (u.x, u.y);
    let fi = |k: u32| k as f64;
    let xi = ipow(x, i);
    let yj = ipow(y, j);
    let dx = if i > 0 { fi(i) * ipow(x, i - 1) } else { 0.0 };
    let dy = if j > 0 { fi(j) * ipow(y, j - 1) } else { 0.0 };
    let dxx = if i > 1 { fi(i) * fi(i - 1) * ipow(x, i - 2) } else { 0.0 };
    let dyy = if j > 1 { fi(j) * fi(j - 1) * ipow(y, j - 2) } else { 0.0 };
    let value = xi * yj;
    let grad = Vector::new(dx * yj, xi * dy);
    let hxy = dx * dy;
    let hess = Matrix2::new(dxx * yj, hxy, hxy, xi * dyy);
    (value, grad, hess)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Qltz,
    QuadMorley,
    TriP1nc,
    TriMorley,
    PressureP1,
    PressureP0,
}

impl ElementKind {
    pub fn dim(self) -> usize {
        match self {
            ElementKind::Qltz => 5,
            ElementKind::QuadMorley => 8,
            ElementKind::TriP1nc => 3,
            ElementKind::TriMorley => 6,
            ElementKind::PressureP1 => 3,
            ElementKind::PressureP0 => 1,
        }
    }
}

/// Basis values and physical derivatives at one point.
#[derive(Debug, Clone, Default)]
pub struct BasisEval {
    pub values: Vec<f64>,
    pub grads: Vec<Vector>,
    pub hessians: Vec<Matrix2<f64>>,
}

/// A linear functional on a local space.
#[derive(Debug, Clone, PartialEq)]
pub enum Dof {
    PointValue(Point),
    EdgeMean(Point, Point),
    /// Mean of `n · ∇v` along the segment.
    EdgeNormalMean(Point, Point, Vector),
    /// Mean over a convex polygon.
    CellMean(Vec<Point>),
}

impl Dof {
    /// Applies the functional to `f`, given as `p -> (value, gradient)`,
    /// integrating exactly up to `degree`.
    pub fn apply(&self, degree: usize, f: impl Fn(Point) -> (f64, Vector)) -> Result<f64> {
        Ok(match self {
            Dof::PointValue(p) => f(*p).0,
            Dof::EdgeMean(a, b) => {
                let rule = edge_rule(*a, *b, degree)?;
                rule.integrate(|p| f(p).0) / rule.total_weight()
            }
            Dof::EdgeNormalMean(a, b, n) => {
                let rule = edge_rule(*a, *b, degree)?;
                rule.integrate(|p| f(p).1.dot(n)) / rule.total_weight()
            }
            Dof::CellMean(poly) => {
                let rule = polygon_rule(poly, degree)?;
                rule.integrate(|p| f(p).0) / rule.total_weight()
            }
        })
    }
}

/// Local basis: row `k` of `coeffs` holds basis function `k` in the monomials
/// `exponents` of the affine coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalBasis {
    kind: ElementKind,
    coords: AffineCoords,
    exponents: Exponents,
    coeffs: DMatrix<f64>,
}

impl LocalBasis {
    pub fn from_coefficients(
        kind: ElementKind,
        coords: AffineCoords,
        exponents: Exponents,
        coeffs: DMatrix<f64>,
    ) -> Self {
        assert_eq!(coeffs.ncols(), exponents.len());
        Self {
            kind,
            coords,
            exponents,
            coeffs,
        }
    }

    /// Dual basis of `dofs` in the span of `exponents`, by inverting the
    /// DOF-on-monomial matrix with full pivoting.
    pub fn from_dofs(
        kind: ElementKind,
        coords: AffineCoords,
        exponents: Exponents,
        dofs: &[Dof],
    ) -> Result<Self> {
        let n = exponents.len();
        assert_eq!(dofs.len(), n, "DOF count must match the space dimension");
        let degree = exponents.iter().map(|(i, j)| (i + j) as usize).max().unwrap_or(0);
        let mut d = DMatrix::zeros(n, n);
        for (r, dof) in dofs.iter().enumerate() {
            for (k, &(i, j)) in exponents.iter().enumerate() {
                d[(r, k)] = dof.apply(degree, |p| {
                    let (v, g, _) = monomial(i, j, coords.to_local(p));
                    (v, coords.grad_to_physical(g))
                })?;
            }
        }
        let sv = d.clone().singular_values();
        let smax = sv.max();
        let smin = sv.min();
        let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
        if cond > MAX_CONDITION {
            return Err(Error::IllConditioned(cond));
        }
        let inv = d
            .full_piv_lu()
            .try_inverse()
            .ok_or(Error::IllConditioned(f64::INFINITY))?;
        Ok(Self::from_coefficients(kind, coords, exponents, inv.transpose()))
    }

    pub fn kind(&self) -> ElementKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn coords(&self) -> &AffineCoords {
        &self.coords
    }

    pub fn exponents(&self) -> Exponents {
        self.exponents
    }

    pub fn coefficients(&self) -> &DMatrix<f64> {
        &self.coeffs
    }

    pub fn eval(&self, p: Point) -> BasisEval {
        let u = self.coords.to_local(p);
        let mono: Vec<_> = self.exponents.iter().map(|&(i, j)| monomial(i, j, u)).collect();
        let nb = self.dim();
        let mut out = BasisEval {
            values: Vec::with_capacity(nb),
            grads: Vec::with_capacity(nb),
            hessians: Vec::with_capacity(nb),
        };
        for b in 0..nb {
            let mut v = 0.0;
            let mut g = Vector::zeros();
            let mut h = Matrix2::zeros();
            for (k, (mv, mg, mh)) in mono.iter().enumerate() {
                let c = self.coeffs[(b, k)];
                if c != 0.0 {
                    v += c * mv;
                    g += c * mg;
                    h += c * mh;
                }
            }
            out.values.push(v);
            out.grads.push(self.coords.grad_to_physical(g));
            out.hessians.push(self.coords.hessian_to_physical(h));
        }
        out
    }

    pub fn values(&self, p: Point) -> Vec<f64> {
        self.eval(p).values
    }

    /// Value, gradient and Hessian of `sum_k c_k phi_k`.
    pub fn combine(&self, c: &[f64], p: Point) -> (f64, Vector, Matrix2<f64>) {
        let e = self.eval(p);
        let mut v = 0.0;
        let mut g = Vector::zeros();
        let mut h = Matrix2::zeros();
        for (k, ck) in c.iter().enumerate() {
            v += ck * e.values[k];
            g += e.grads[k] * *ck;
            h += e.hessians[k] * *ck;
        }
        (v, g, h)
    }

    /// Highest total degree of the local space.
    pub fn degree(&self) -> usize {
        self.exponents
            .iter()
            .map(|(i, j)| (i + j) as usize)
            .max()
            .unwrap_or(0)
    }
}

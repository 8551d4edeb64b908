//! Dense complex linear algebra with tolerance-based rank decisions.
//!
//! Everything downstream (Hopf structure constants, subspaces such as a
//! coideal `A`, the ideal `HA⁺`, invariants) is stored as coordinate data
//! over `Complex64` and manipulated through the helpers in this module.

mod subspace;
mod wedderburn;

pub use subspace::Subspace;
pub use wedderburn::{wedderburn, StarAlgebra, WedderburnBlock};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Result};

pub type C64 = Complex64;
pub type Matrix = DMatrix<C64>;
pub type Vector = DVector<C64>;

/// Default relative tolerance for rank and residual decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Largest absolute entry.
pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_vec(v: &Vector) -> f64 {
    v.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = Vector::zeros(n);
    v[i] = ONE;
    v
}

pub(crate) fn check_finite(m: &Matrix, what: &str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(invalid(format!("{what} has non-finite entries")))
    }
}

/// Singular values (descending) together with a full right-singular basis
/// `V` (columns) and the matching left-singular vectors `U` (columns, only the
/// first `min(rows, cols)` are meaningful).
/// Singular values (descending), the full right factor `V` (`cols × cols`)
/// and the full left factor `U` (`rows × rows`).
pub(crate) fn full_svd(m: &Matrix) -> (Vec<f64>, Matrix, Matrix) {
    let (rows, cols) = m.shape();
    if cols == 0 || rows == 0 {
        return (Vec::new(), Matrix::identity(cols, cols), Matrix::identity(rows, rows));
    }
    // nalgebra's complex SVD loses accuracy on rectangular input; faer's does not.
    let svd = to_faer(m)
        .svd()
        .expect("SVD of a finite matrix converges");
    let sv = svd.S().column_vector();
    let mut order: Vec<usize> = (0..sv.nrows()).collect();
    order.sort_by(|&a, &b| sv[b].re.partial_cmp(&sv[a].re).unwrap_or(std::cmp::Ordering::Equal));
    let s: Vec<f64> = order.iter().map(|&i| sv[i].re).collect();
    let (u, v) = (from_faer(svd.U()), from_faer(svd.V()));
    let v = permute_leading(&v, &order);
    let u = permute_leading(&u, &order);
    (s, v, u)
}

/// Reorder the first `order.len()` columns, keeping the rest in place.
fn permute_leading(m: &Matrix, order: &[usize]) -> Matrix {
    let mut out = m.clone();
    for (dst, &src) in order.iter().enumerate() {
        out.set_column(dst, &m.column(src));
    }
    out
}

fn to_faer(m: &Matrix) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: faer::MatRef<'_, C64>) -> Matrix {
    Matrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn numerical_rank(s: &[f64], tol: f64, floor: f64) -> usize {
    let smax = s.first().copied().unwrap_or(0.0).max(floor);
    if smax == 0.0 {
        return 0;
    }
    s.iter().filter(|&&x| x > tol * smax).count()
}

/// Orthonormal basis of `{v : ‖Mv‖ ≤ tol·‖M‖·‖v‖}`.
pub fn nullspace(m: &Matrix, tol: f64) -> Result<Subspace> {
    nullspace_scaled(m, tol, 0.0)
}

/// Like `nullspace`, with singular values measured against
/// `max(‖M‖, scale)`, so that a matrix assembled from differences of
/// order-`scale` data which cancel to rounding noise counts as zero.
pub fn nullspace_scaled(m: &Matrix, tol: f64, scale: f64) -> Result<Subspace> {
    if tol <= 0.0 {
        return Err(invalid("tolerance must be positive"));
    }
    check_finite(m, "matrix")?;
    let cols = m.ncols();
    let (s, v, _) = full_svd(m);
    let r = numerical_rank(&s, tol, scale);
    let basis = if cols == 0 {
        Matrix::zeros(0, 0)
    } else {
        v.columns(r, cols - r).into_owned()
    };
    Ok(Subspace::from_orthonormal(cols, basis, tol))
}

/// Orthonormal basis of the column span of `m`.
pub fn column_space(m: &Matrix, tol: f64) -> Subspace {
    let rows = m.nrows();
    if m.ncols() == 0 || rows == 0 {
        return Subspace::zero(rows, tol);
    }
    column_space_scaled(m, tol, 0.0)
}

/// Column span with the same absolute floor as `nullspace_scaled`.
pub fn column_space_scaled(m: &Matrix, tol: f64, scale: f64) -> Subspace {
    let rows = m.nrows();
    if m.ncols() == 0 || rows == 0 {
        return Subspace::zero(rows, tol);
    }
    let (s, _, u) = full_svd(m);
    let r = numerical_rank(&s, tol, scale).min(u.ncols());
    Subspace::from_orthonormal(rows, u.columns(0, r).into_owned(), tol)
}

/// Stack vectors as the columns of a matrix.
pub fn columns(n: usize, vs: &[Vector]) -> Matrix {
    let mut m = Matrix::zeros(n, vs.len());
    for (j, v) in vs.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Numerical rank of a matrix under the relative threshold.
pub fn rank(m: &Matrix, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let (s, _, _) = full_svd(m);
    numerical_rank(&s, tol, 0.0)
}

/// Eigen-decomposition of a Hermitian matrix; eigenvalues ascending.
pub fn hermitian_eigen(g: &Matrix) -> (Vec<f64>, Matrix) {
    let n = g.nrows();
    if n == 0 {
        return (Vec::new(), Matrix::zeros(0, 0));
    }
    let h = (g + g.adjoint()) * re(0.5);
    let eig = to_faer(&h)
        .self_adjoint_eigen(faer::Side::Lower)
        .expect("Hermitian eigen-decomposition of a finite matrix converges");
    let ev = eig.S().column_vector();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ev[a].re.partial_cmp(&ev[b].re).unwrap_or(std::cmp::Ordering::Equal));
    let vals = order.iter().map(|&i| ev[i].re).collect();
    let vecs = permute_leading(&from_faer(eig.U()), &order);
    (vals, vecs)
}

/// Outcome of a positive-semidefiniteness test.
#[derive(Clone, Debug, Serialize)]
pub struct PsdReport {
    pub psd: bool,
    pub min_eigenvalue: f64,
    pub eigenvalues: Vec<f64>,
    /// Eigenvector for `min_eigenvalue`.
    #[serde(skip)]
    pub min_eigenvector: Vector,
}

/// True iff the smallest eigenvalue is ≥ −tol·‖G‖.
pub fn psd_check(g: &Matrix, tol: f64) -> Result<PsdReport> {
    if g.nrows() != g.ncols() {
        return Err(invalid("Gram matrix is not square"));
    }
    check_finite(g, "Gram matrix")?;
    let scale = max_abs(g).max(1.0);
    let defect = max_abs(&(g - g.adjoint()));
    if defect > tol * scale {
        return Err(invalid(format!(
            "matrix is not self-adjoint (defect {defect:.3e})"
        )));
    }
    Ok(psd_of_hermitian(g, tol))
}

pub(crate) fn psd_of_hermitian(g: &Matrix, tol: f64) -> PsdReport {
    let (vals, vecs) = hermitian_eigen(g);
    if vals.is_empty() {
        return PsdReport {
            psd: true,
            min_eigenvalue: 0.0,
            eigenvalues: vals,
            min_eigenvector: Vector::zeros(0),
        };
    }
    let norm = vals.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    let min = vals[0];
    PsdReport {
        psd: min >= -tol * norm.max(f64::MIN_POSITIVE),
        min_eigenvalue: min,
        eigenvalues: vals,
        min_eigenvector: vecs.column(0).into_owned(),
    }
}

/// Inverse square root of a Hermitian positive-definite matrix.
pub(crate) fn inv_sqrt_pd(g: &Matrix) -> Option<(Matrix, Matrix)> {
    let (vals, vecs) = hermitian_eigen(g);
    if vals.iter().any(|&x| x <= 0.0) {
        return None;
    }
    let n = vals.len();
    let mut d = Matrix::zeros(n, n);
    let mut di = Matrix::zeros(n, n);
    for (i, &x) in vals.iter().enumerate() {
        d[(i, i)] = re(x.sqrt());
        di[(i, i)] = re(1.0 / x.sqrt());
    }
    let sqrt = &vecs * d * vecs.adjoint();
    let inv_sqrt = &vecs * di * vecs.adjoint();
    Some((sqrt, inv_sqrt))
}

/// Solve `M x = b` in the least-squares sense; returns the solution, the
/// residual norm and the dimension of the solution space of `M x = 0`.
pub fn solve_affine(m: &Matrix, b: &Vector, tol: f64) -> (Vector, f64, usize) {
    let n = m.ncols();
    let (s, v, u) = full_svd(m);
    let r = numerical_rank(&s, tol, 0.0);
    let mut x = Vector::zeros(n);
    for i in 0..r {
        let coeff = u.column(i).dotc(b) / re(s[i]);
        x += v.column(i) * coeff;
    }
    let residual = (m * &x - b).norm();
    (x, residual, n - r)
}

/// Uniform complex numbers in the unit square, used to draw random elements.
pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    Vector::from_iterator(
        n,
        (0..n).map(|_| c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))),
    )
}

/// Dense 3-index tensor `T[i][j][k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor3 {
    dims: (usize, usize, usize),
    data: Vec<C64>,
}

impl Tensor3 {
    pub fn zeros(d0: usize, d1: usize, d2: usize) -> Self {
        Self {
            dims: (d0, d1, d2),
            data: vec![ZERO; d0 * d1 * d2],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        self.dims
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims.1 + j) * self.dims.2 + k
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> C64 {
        self.data[self.idx(i, j, k)]
    }

    #[inline]
    pub fn add(&mut self, i: usize, j: usize, k: usize, v: C64) {
        let ix = self.idx(i, j, k);
        self.data[ix] += v;
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: C64) {
        let ix = self.idx(i, j, k);
        self.data[ix] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |a, z| a.max(z.norm()))
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, C64)> + '_ {
        let (_, d1, d2) = self.dims;
        self.data.iter().enumerate().filter_map(move |(ix, &v)| {
            if v == ZERO {
                None
            } else {
                Some((ix / (d1 * d2), (ix / d2) % d1, ix % d2, v))
            }
        })
    }

    /// The matrix `T[i][·][·]`.
    pub fn slice0(&self, i: usize) -> Matrix {
        let (_, d1, d2) = self.dims;
        Matrix::from_fn(d1, d2, |j, k| self.get(i, j, k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(rows: usize, cols: usize, vals: &[f64]) -> Matrix {
        Matrix::from_row_iterator(rows, cols, vals.iter().map(|&x| re(x)))
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        let ns = nullspace(&Matrix::zeros(3, 3), 1e-9).unwrap();
        assert_eq!(ns.dim(), 3);
    }

    #[test]
    fn nullspace_of_identity_is_trivial() {
        let ns = nullspace(&Matrix::identity(3, 3), 1e-9).unwrap();
        assert_eq!(ns.dim(), 0);
    }

    #[test]
    fn nullspace_of_all_ones() {
        // x + y = 0 twice: the kernel is spanned by (1, -1)/sqrt 2.
        let ns = nullspace(&real(2, 2, &[1.0, 1.0, 1.0, 1.0]), 1e-9).unwrap();
        assert_eq!(ns.dim(), 1);
        let v = ns.basis().column(0);
        let expected = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt()];
        let phase = v[0] / re(expected[0]);
        for i in 0..2 {
            assert!((v[i] - phase * re(expected[i])).norm() < 1e-12);
        }
        assert!((phase.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn nullspace_rejects_nan() {
        let mut m = Matrix::zeros(2, 2);
        m[(0, 0)] = c64(f64::NAN, 0.0);
        assert!(nullspace(&m, 1e-9).is_err());
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = real(1, 3, &[1.0, 2.0, 3.0]);
        let ns = nullspace(&m, 1e-9).unwrap();
        assert_eq!(ns.dim(), 2);
        for v in ns.basis().column_iter() {
            assert!((&m * v).norm() < 1e-12);
        }
    }

    #[test]
    fn psd_examples() {
        let r = psd_check(&Matrix::identity(3, 3), 1e-9).unwrap();
        assert!(r.psd);
        assert!((r.min_eigenvalue - 1.0).abs() < 1e-12);

        let r = psd_check(&real(2, 2, &[1.0, 0.0, 0.0, -1.0]), 1e-9).unwrap();
        assert!(!r.psd);
        assert!((r.min_eigenvalue + 1.0).abs() < 1e-12);

        // Gram of (1,0), (1,1): [[1,1],[1,2]], eigenvalues (3 ± √5)/2.
        let r = psd_check(&real(2, 2, &[1.0, 1.0, 1.0, 2.0]), 1e-9).unwrap();
        assert!(r.psd);
        assert!((r.min_eigenvalue - (3.0 - 5f64.sqrt()) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn psd_rejects_non_hermitian() {
        let m = real(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(psd_check(&m, 1e-9).is_err());
    }

    #[test]
    fn affine_solver_reports_kernel_dimension() {
        let m = real(1, 2, &[1.0, 1.0]);
        let b = Vector::from_vec(vec![re(2.0)]);
        let (x, res, kdim) = solve_affine(&m, &b, 1e-9);
        assert!(res < 1e-12);
        assert_eq!(kdim, 1);
        assert!((x[0] + x[1] - re(2.0)).norm() < 1e-12);
    }
}

use serde::Serialize;

use super::{column_space, columns, nullspace, Matrix, Vector};
use crate::error::{Error, Result};

/// A linear subspace of `C^n`, held as an orthonormal column basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    tol: f64,
}

/// Result of comparing two subspaces.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Comparison {
    pub equal: bool,
    /// Largest distance from a basis vector of one side to the other side.
    pub residual: f64,
}

impl Subspace {
    pub(crate) fn from_orthonormal(ambient: usize, basis: Matrix, tol: f64) -> Self {
        debug_assert_eq!(basis.nrows(), ambient);
        Self {
            ambient,
            basis,
            tol,
        }
    }

    pub fn zero(ambient: usize, tol: f64) -> Self {
        Self::from_orthonormal(ambient, Matrix::zeros(ambient, 0), tol)
    }

    pub fn full(ambient: usize, tol: f64) -> Self {
        Self::from_orthonormal(ambient, Matrix::identity(ambient, ambient), tol)
    }

    /// Span of arbitrary vectors (orthonormalized).
    pub fn span(ambient: usize, vectors: &[Vector], tol: f64) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionError {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        Ok(column_space(&columns(ambient, vectors), tol))
    }

    pub fn from_columns(m: &Matrix, tol: f64) -> Self {
        column_space(m, tol)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// Orthonormal basis vectors as matrix columns.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.basis.column_iter().map(|c| c.into_owned()).collect()
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.ambient {
            Err(Error::DimensionError {
                expected: self.ambient,
                found: n,
            })
        } else {
            Ok(())
        }
    }

    pub fn project(&self, v: &Vector) -> Result<Vector> {
        self.check(v.len())?;
        Ok(&self.basis * (self.basis.adjoint() * v))
    }

    /// Coordinates of the orthogonal projection of `v` in the stored basis.
    pub fn coordinates(&self, v: &Vector) -> Result<Vector> {
        self.check(v.len())?;
        Ok(self.basis.adjoint() * v)
    }

    /// `‖v − proj v‖`.
    pub fn distance(&self, v: &Vector) -> Result<f64> {
        Ok((v - self.project(v)?).norm())
    }

    /// `‖v − proj v‖ ≤ tol·‖v‖`.
    pub fn contains(&self, v: &Vector) -> Result<bool> {
        let d = self.distance(v)?;
        Ok(d <= self.tol * v.norm())
    }

    pub fn projector(&self) -> Matrix {
        &self.basis * self.basis.adjoint()
    }

    /// Orthogonal complement in coordinates.
    pub fn complement(&self) -> Subspace {
        let m = self.basis.adjoint();
        match nullspace(&m, self.tol) {
            Ok(s) => s,
            Err(_) => Subspace::full(self.ambient, self.tol),
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let mut m = Matrix::zeros(self.ambient, self.dim() + other.dim());
        m.columns_mut(0, self.dim()).copy_from(&self.basis);
        m.columns_mut(self.dim(), other.dim()).copy_from(&other.basis);
        Ok(column_space(&m, self.tol))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other.ambient)?;
        let (kx, ky) = (self.dim(), other.dim());
        if kx == 0 || ky == 0 {
            return Ok(Subspace::zero(self.ambient, self.tol));
        }
        let mut m = Matrix::zeros(self.ambient, kx + ky);
        m.columns_mut(0, kx).copy_from(&self.basis);
        m.columns_mut(kx, ky).copy_from(&(-&other.basis));
        let ns = nullspace(&m, self.tol)?;
        let coeffs = ns.basis().rows(0, kx).into_owned();
        Ok(column_space(&(&self.basis * coeffs), self.tol))
    }

    /// Largest distance from a basis vector of `other` to `self`.
    pub fn containment_residual(&self, other: &Subspace) -> Result<f64> {
        self.check(other.ambient)?;
        let mut worst = 0.0f64;
        for v in other.basis.column_iter() {
            let v = v.into_owned();
            worst = worst.max(self.distance(&v)?);
        }
        Ok(worst)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        Ok(self.containment_residual(other)? <= self.tol.max(other.tol) * 10.0)
    }

    pub fn compare(&self, other: &Subspace) -> Result<Comparison> {
        let r = self
            .containment_residual(other)?
            .max(other.containment_residual(self)?);
        let tol = self.tol.max(other.tol) * 10.0;
        Ok(Comparison {
            equal: self.dim() == other.dim() && r <= tol,
            residual: r,
        })
    }

    /// Image of the subspace under a linear map.
    pub fn image(&self, map: &Matrix) -> Subspace {
        column_space(&(map * &self.basis), self.tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{basis_vector, re};
    use proptest::prelude::*;

    fn e(i: usize) -> Vector {
        basis_vector(3, i)
    }

    #[test]
    fn coordinate_planes_meet_in_a_line() {
        let x = Subspace::span(3, &[e(0), e(1)], 1e-9).unwrap();
        let y = Subspace::span(3, &[e(1), e(2)], 1e-9).unwrap();
        let z = x.intersect(&y).unwrap();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&e(1)).unwrap());
    }

    #[test]
    fn containment_is_strict() {
        let x = Subspace::span(3, &[e(0)], 1e-9).unwrap();
        assert!(!x.contains(&(e(0) + e(1))).unwrap());
        assert!(x.contains(&(e(0) * re(3.0))).unwrap());
    }

    #[test]
    fn sum_of_skew_lines_is_a_plane() {
        let x = Subspace::span(3, &[e(0)], 1e-9).unwrap();
        let y = Subspace::span(3, &[e(0) + e(1)], 1e-9).unwrap();
        assert_eq!(x.sum(&y).unwrap().dim(), 2);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let x = Subspace::span(3, &[e(0)], 1e-9).unwrap();
        let y = Subspace::zero(4, 1e-9);
        assert!(matches!(x.sum(&y), Err(Error::DimensionError { .. })));
        assert!(x.project(&basis_vector(2, 0)).is_err());
    }

    proptest! {
        #[test]
        fn intersection_lies_in_both(seed in 0u64..500) {
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = 6;
            let a: Vec<Vector> = (0..4).map(|_| crate::numkernel::random_vector(&mut rng, n)).collect();
            let b: Vec<Vector> = (0..4).map(|_| crate::numkernel::random_vector(&mut rng, n)).collect();
            let x = Subspace::span(n, &a, 1e-9).unwrap();
            let y = Subspace::span(n, &b, 1e-9).unwrap();
            let z = x.intersect(&y).unwrap();
            // generic 4-planes in C^6 meet in a plane
            prop_assert_eq!(z.dim(), 2);
            prop_assert!(x.contains_subspace(&z).unwrap());
            prop_assert!(y.contains_subspace(&z).unwrap());
            prop_assert_eq!(x.sum(&y).unwrap().dim(), 6);
        }
    }
}

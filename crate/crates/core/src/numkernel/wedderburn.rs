//! Matrix-unit decomposition of a finite-dimensional C*-algebra.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{
    hermitian_eigen, inv_sqrt_pd, max_abs, nullspace_scaled, random_vector, re, Matrix, Subspace, Vector,
};
use crate::error::{Error, Result};

const MAX_RETRIES: usize = 8;

/// A finite-dimensional *-algebra in coordinates.
///
/// `lmul[i]` is the matrix of left multiplication by the `i`-th basis vector;
/// `star` is applied after conjugating coordinates.
#[derive(Clone, Debug)]
pub struct StarAlgebra {
    pub lmul: Vec<Matrix>,
    pub unit: Vector,
    pub star: Matrix,
    pub tol: f64,
}

/// One simple summand `M_n`, with `units[i * n + j]` the coordinates of `E_ij`.
#[derive(Clone, Debug)]
pub struct WedderburnBlock {
    pub n: usize,
    pub units: Vec<Vector>,
}

impl WedderburnBlock {
    pub fn unit(&self, i: usize, j: usize) -> &Vector {
        &self.units[i * self.n + j]
    }
}

impl StarAlgebra {
    pub fn dim(&self) -> usize {
        self.unit.len()
    }

    pub fn left(&self, x: &Vector) -> Matrix {
        let d = self.dim();
        let mut l = Matrix::zeros(d, d);
        for (i, &c) in x.iter().enumerate() {
            if c.norm() != 0.0 {
                l += &self.lmul[i] * c;
            }
        }
        l
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.left(x) * y
    }

    pub fn adjoint(&self, x: &Vector) -> Vector {
        &self.star * x.map(|z| z.conj())
    }

    fn self_adjoint_part(&self, x: &Vector) -> Vector {
        (x + self.adjoint(x)) * re(0.5)
    }

    /// Coordinates of the center, as a nullspace of all commutators.
    pub fn center(&self) -> Result<Subspace> {
        let d = self.dim();
        let mut m = Matrix::zeros(d * d, d);
        for i in 0..d {
            // column j of (L_i - R_i) is e_i e_j - e_j e_i
            for j in 0..d {
                for k in 0..d {
                    m[(i * d + k, j)] = self.lmul[i][(k, j)] - self.lmul[j][(k, i)];
                }
            }
        }
        let scale = self.lmul.iter().fold(0.0f64, |a, l| a.max(max_abs(l)));
        nullspace_scaled(&m, self.tol, scale)
    }
}

/// Decompose a semisimple *-algebra with positive trace form into matrix
/// blocks. The seed drives the random central and block elements.
pub fn wedderburn(alg: &StarAlgebra, seed: u64) -> Result<Vec<WedderburnBlock>> {
    let d = alg.dim();
    if alg.lmul.len() != d || alg.star.shape() != (d, d) {
        return Err(Error::DimensionError {
            expected: d,
            found: alg.lmul.len(),
        });
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let tol = alg.tol;

    // traces[k][l] = Tr(L_k L_l)
    let mut traces = Matrix::zeros(d, d);
    for k in 0..d {
        for l in 0..d {
            traces[(k, l)] = (&alg.lmul[k] * &alg.lmul[l]).trace();
        }
    }
    let (vals, _) = hermitian_eigen(&((&traces + traces.transpose()) * re(0.5)));
    let scale = vals.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    let nondegenerate = super::rank(&traces, tol) == d;
    if !nondegenerate {
        return Err(Error::NotSemisimple(
            "trace form is degenerate (nonzero radical)".into(),
        ));
    }
    // <x, y> = Tr(L_{x*} L_y) = x^H G y
    let gram = alg.star.transpose() * &traces;
    let defect = max_abs(&(&gram - gram.adjoint()));
    let (sqrt_g, inv_sqrt_g) = match inv_sqrt_pd(&gram) {
        Some(pair) if defect <= 1e-6 * scale => pair,
        _ => {
            return Err(Error::NotSemisimple(
                "trace inner product is not positive definite".into(),
            ))
        }
    };
    let centre = alg.center()?;
    let nblocks = centre.dim();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        let w = centre.basis() * random_vector(&mut rng, nblocks);
        let z = alg.self_adjoint_part(&w);
        let Some(spaces) = spectral_clusters(&alg.left(&z), &sqrt_g, &inv_sqrt_g, None) else {
            continue;
        };
        if spaces.len() != nblocks {
            continue;
        }
        let mut blocks = Vec::with_capacity(nblocks);
        let mut failed = false;
        for space in &spaces {
            let p = g_project(&alg.unit, space, &gram);
            match block_units(alg, &p, space, &gram, &sqrt_g, &inv_sqrt_g, &mut rng)? {
                Some(b) => blocks.push(b),
                None => {
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            continue;
        }
        let total: usize = blocks.iter().map(|b| b.n * b.n).sum();
        if total != d {
            return Err(Error::NotSemisimple(format!(
                "blocks account for {total} of {d} dimensions"
            )));
        }
        blocks.sort_by_key(|b| b.n);
        return Ok(blocks);
    }
    Err(Error::ConstructionFailure(format!(
        "eigenvalue collisions persisted after {MAX_RETRIES} random draws"
    )))
}

/// Eigenspaces of an operator that is self-adjoint for the inner product with
/// Gram `G = W²`, optionally restricted to an invariant subspace.
/// Returns `None` if two eigenvalues are too close to separate reliably.
fn spectral_clusters(
    op: &Matrix,
    sqrt_g: &Matrix,
    inv_sqrt_g: &Matrix,
    within: Option<&Matrix>,
) -> Option<Vec<Matrix>> {
    let herm = sqrt_g * op * inv_sqrt_g;
    // orthonormal (in W-coordinates) basis of the region we look at
    let region = match within {
        Some(b) => {
            let wb = sqrt_g * b;
            super::column_space(&wb, 1e-10).basis().clone()
        }
        None => Matrix::identity(op.nrows(), op.nrows()),
    };
    let restricted = region.adjoint() * &herm * &region;
    let (vals, vecs) = hermitian_eigen(&restricted);
    let spread = vals.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1e-300);
    let gap = 1e-6 * spread.max(1.0);
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for i in 0..vals.len() {
        if i > 0 && vals[i] - vals[i - 1] <= gap {
            clusters.last_mut().unwrap().push(i);
        } else {
            if i > 0 && vals[i] - vals[i - 1] <= 1e-3 * spread {
                // distinct but too close for a trustworthy split
                return None;
            }
            clusters.push(vec![i]);
        }
    }
    let back = inv_sqrt_g * &region;
    Some(
        clusters
            .into_iter()
            .map(|idx| {
                let mut m = Matrix::zeros(vecs.nrows(), idx.len());
                for (c, &i) in idx.iter().enumerate() {
                    m.set_column(c, &vecs.column(i));
                }
                &back * m
            })
            .collect(),
    )
}

/// Orthogonal projection of `x` onto the column span of `space` for the
/// Gram inner product.
fn g_project(x: &Vector, space: &Matrix, gram: &Matrix) -> Vector {
    let m = space.adjoint() * gram * space;
    let rhs = space.adjoint() * gram * x;
    let coeffs = m.lu().solve(&rhs).unwrap_or_else(|| Vector::zeros(space.ncols()));
    space * coeffs
}

fn block_units(
    alg: &StarAlgebra,
    p: &Vector,
    space: &Matrix,
    gram: &Matrix,
    sqrt_g: &Matrix,
    inv_sqrt_g: &Matrix,
    rng: &mut ChaCha8Rng,
) -> Result<Option<WedderburnBlock>> {
    let k = space.ncols();
    let n = (k as f64).sqrt().round() as usize;
    if n * n != k {
        return Err(Error::NotSemisimple(format!(
            "central summand of dimension {k} is not a full matrix algebra"
        )));
    }
    if n == 1 {
        return Ok(Some(WedderburnBlock {
            n,
            units: vec![p.clone()],
        }));
    }
    let d = alg.dim();
    let lp = alg.left(p);
    let y = alg.self_adjoint_part(&(&lp * random_vector(rng, d)));
    let Some(eig) = spectral_clusters(&alg.left(&y), sqrt_g, inv_sqrt_g, Some(space)) else {
        return Ok(None);
    };
    if eig.len() != n || eig.iter().any(|m| m.ncols() != n) {
        return Ok(None);
    }
    let f: Vec<Vector> = eig.iter().map(|s| g_project(p, s, gram)).collect();
    let f1 = &f[0];
    let ip = |a: &Vector, b: &Vector| (a.adjoint() * gram * b)[(0, 0)];
    let f1_norm = ip(f1, f1);

    let mut row = vec![f1.clone()];
    for fj in f.iter().skip(1) {
        let x = random_vector(rng, d);
        let r = alg.mul(&alg.mul(f1, &x), fj);
        let rr = alg.mul(&r, &alg.adjoint(&r));
        let c = (ip(f1, &rr) / f1_norm).re;
        if c <= 1e-8 * r.norm().powi(2).max(1e-300) {
            return Ok(None);
        }
        row.push(r * re(1.0 / c.sqrt()));
    }
    let col: Vec<Vector> = row.iter().map(|e| alg.adjoint(e)).collect();
    let mut units = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            units.push(if i == 0 {
                row[j].clone()
            } else if j == 0 {
                col[i].clone()
            } else {
                alg.mul(&col[i], &row[j])
            });
        }
    }
    Ok(Some(WedderburnBlock { n, units }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::{basis_vector, c64, ONE};

    /// M_n with the matrix-unit basis and conjugate transpose.
    fn matrix_algebra(n: usize) -> StarAlgebra {
        let d = n * n;
        let mut lmul = vec![Matrix::zeros(d, d); d];
        let mut star = Matrix::zeros(d, d);
        for i in 0..n {
            for j in 0..n {
                for l in 0..n {
                    // E_ij E_jl = E_il
                    lmul[i * n + j][(i * n + l, j * n + l)] = ONE;
                }
                star[(j * n + i, i * n + j)] = ONE;
            }
        }
        let mut unit = Vector::zeros(d);
        for i in 0..n {
            unit[i * n + i] = ONE;
        }
        StarAlgebra {
            lmul,
            unit,
            star,
            tol: 1e-9,
        }
    }

    fn check_units(alg: &StarAlgebra, blocks: &[WedderburnBlock]) {
        let mut sum = Vector::zeros(alg.dim());
        for (a, b) in blocks.iter().enumerate() {
            for i in 0..b.n {
                sum += b.unit(i, i);
                for j in 0..b.n {
                    let adj = alg.adjoint(b.unit(i, j));
                    assert!((adj - b.unit(j, i)).norm() < 1e-8);
                    for (a2, b2) in blocks.iter().enumerate() {
                        for k in 0..b2.n {
                            for l in 0..b2.n {
                                let prod = alg.mul(b.unit(i, j), b2.unit(k, l));
                                let expected = if a == a2 && j == k {
                                    b.unit(i, l).clone()
                                } else {
                                    Vector::zeros(alg.dim())
                                };
                                assert!((prod - expected).norm() < 1e-8);
                            }
                        }
                    }
                }
            }
        }
        assert!((sum - &alg.unit).norm() < 1e-8);
    }

    #[test]
    fn single_matrix_block() {
        let alg = matrix_algebra(2);
        let blocks = wedderburn(&alg, 0).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].n, 2);
        check_units(&alg, &blocks);
    }

    #[test]
    fn three_by_three_block() {
        let alg = matrix_algebra(3);
        let blocks = wedderburn(&alg, 7).unwrap();
        assert_eq!(blocks.iter().map(|b| b.n).collect::<Vec<_>>(), vec![3]);
        check_units(&alg, &blocks);
    }

    #[test]
    fn commutative_functions_on_three_points() {
        let d = 3;
        let mut lmul = vec![Matrix::zeros(d, d); d];
        for (i, l) in lmul.iter_mut().enumerate() {
            l[(i, i)] = ONE;
        }
        let alg = StarAlgebra {
            lmul,
            unit: Vector::from_element(d, ONE),
            star: Matrix::identity(d, d),
            tol: 1e-9,
        };
        let blocks = wedderburn(&alg, 0).unwrap();
        assert_eq!(blocks.len(), 3);
        assert!(blocks.iter().all(|b| b.n == 1));
        check_units(&alg, &blocks);
    }

    #[test]
    fn dual_numbers_are_not_semisimple() {
        // span{1, x} with x² = 0
        let mut lmul = vec![Matrix::identity(2, 2), Matrix::zeros(2, 2)];
        lmul[1][(1, 0)] = ONE;
        let alg = StarAlgebra {
            lmul,
            unit: basis_vector(2, 0),
            star: Matrix::identity(2, 2),
            tol: 1e-9,
        };
        assert!(matches!(wedderburn(&alg, 0), Err(Error::NotSemisimple(_))));
    }

    #[test]
    fn rotated_basis_gives_same_block_sizes() {
        // C ⊕ M_2 expressed in a non-orthogonal basis.
        let base = {
            let m2 = matrix_algebra(2);
            let d = 5;
            let mut lmul = vec![Matrix::zeros(d, d); d];
            lmul[0][(0, 0)] = ONE;
            for i in 0..4 {
                lmul[i + 1].view_mut((1, 1), (4, 4)).copy_from(&m2.lmul[i]);
            }
            let mut star = Matrix::identity(d, d);
            star.view_mut((1, 1), (4, 4)).copy_from(&m2.star);
            let mut unit = Vector::zeros(d);
            unit[0] = ONE;
            unit.rows_mut(1, 4).copy_from(&m2.unit);
            StarAlgebra {
                lmul,
                unit,
                star,
                tol: 1e-9,
            }
        };
        let mut t = Matrix::identity(5, 5);
        t[(0, 2)] = c64(0.5, 0.25);
        t[(3, 1)] = c64(-0.3, 0.0);
        t[(4, 0)] = c64(0.0, 0.7);
        let ti = t.clone().try_inverse().unwrap();
        // new basis vectors are the columns of t
        let lmul: Vec<Matrix> = (0..5)
            .map(|i| {
                let col = t.column(i).into_owned();
                &ti * base.left(&col) * &t
            })
            .collect();
        let conj_t = t.map(|z| z.conj());
        let alg = StarAlgebra {
            lmul,
            unit: &ti * &base.unit,
            star: &ti * &base.star * conj_t,
            tol: 1e-9,
        };
        let blocks = wedderburn(&alg, 3).unwrap();
        assert_eq!(blocks.iter().map(|b| b.n).collect::<Vec<_>>(), vec![1, 2]);
        check_units(&alg, &blocks);
    }
}

use sha2::{Digest, Sha256};

use crate::error::{invalid, Error, Result};
use crate::numkernel::{max_abs, max_abs_vec, Matrix, StarAlgebra, Tensor3, Vector, C64, ONE, ZERO};
use crate::report::Entry;

/// Sparse comultiplication: `rows[i]` lists `(j, k, c)` with `Δe_i ∋ c·e_j⊗e_k`.
pub type SparseComult = Vec<Vec<(usize, usize, C64)>>;

/// A finite-dimensional *-coalgebra with a conjugate-linear star
/// (applied as `x* = star · conj(x)`).
#[derive(Clone, Debug)]
pub struct StarCoalgebra {
    dim: usize,
    comult: SparseComult,
    counit: Vector,
    star: Matrix,
    tol: f64,
    fingerprint: u64,
}

/// A linear functional on a coalgebra, tied to its parent by fingerprint.
#[derive(Clone, Debug, PartialEq)]
pub struct Functional {
    pub parent: u64,
    pub coords: Vector,
}

impl Functional {
    /// `f(x) = Σ f_i x_i` (bilinear pairing).
    pub fn eval(&self, x: &Vector) -> C64 {
        self.coords.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
    }
}

pub(crate) fn fingerprint_of(dim: usize, comult: &SparseComult, counit: &Vector) -> u64 {
    let mut h = Sha256::new();
    h.update((dim as u64).to_le_bytes());
    for z in counit.iter() {
        h.update(z.re.to_le_bytes());
        h.update(z.im.to_le_bytes());
    }
    for (i, row) in comult.iter().enumerate() {
        for &(j, k, c) in row {
            for n in [i, j, k] {
                h.update((n as u64).to_le_bytes());
            }
            h.update(c.re.to_le_bytes());
            h.update(c.im.to_le_bytes());
        }
    }
    let digest = h.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

impl StarCoalgebra {
    pub fn new(
        dim: usize,
        mut comult: SparseComult,
        counit: Vector,
        star: Matrix,
        tol: f64,
    ) -> Result<Self> {
        if comult.len() != dim || counit.len() != dim || star.shape() != (dim, dim) {
            return Err(invalid(format!(
                "coalgebra data does not match dimension {dim}"
            )));
        }
        if tol <= 0.0 {
            return Err(invalid("tolerance must be positive"));
        }
        for row in comult.iter_mut() {
            if row.iter().any(|&(j, k, _)| j >= dim || k >= dim) {
                return Err(invalid("comultiplication index out of range"));
            }
            row.retain(|&(_, _, c)| c != ZERO);
            row.sort_by_key(|&(j, k, _)| (j, k));
        }
        let fingerprint = fingerprint_of(dim, &comult, &counit);
        Ok(Self {
            dim,
            comult,
            counit,
            star,
            tol,
            fingerprint,
        })
    }

    /// The same coalgebra from a dense comultiplication tensor.
    pub fn from_dense(
        comult: &Tensor3,
        counit: Vector,
        star: Matrix,
        tol: f64,
    ) -> Result<Self> {
        let dim = counit.len();
        let mut rows = vec![Vec::new(); dim];
        for (i, j, k, c) in comult.entries() {
            rows[i].push((j, k, c));
        }
        Self::new(dim, rows, counit, star, tol)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn comult_rows(&self) -> &SparseComult {
        &self.comult
    }

    pub fn counit(&self) -> &Vector {
        &self.counit
    }

    pub fn star_matrix(&self) -> &Matrix {
        &self.star
    }

    /// `Δx` as a `dim × dim` coefficient matrix.
    pub fn comul(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, &xi) in x.iter().enumerate() {
            if xi == ZERO {
                continue;
            }
            for &(j, k, c) in &self.comult[i] {
                m[(j, k)] += xi * c;
            }
        }
        m
    }

    pub fn counit_of(&self, x: &Vector) -> C64 {
        self.counit.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn star_of(&self, x: &Vector) -> Vector {
        &self.star * x.map(|z| z.conj())
    }

    pub fn functional(&self, coords: Vector) -> Result<Functional> {
        if coords.len() != self.dim {
            return Err(Error::DimensionError {
                expected: self.dim,
                found: coords.len(),
            });
        }
        Ok(Functional {
            parent: self.fingerprint,
            coords,
        })
    }

    pub fn counit_functional(&self) -> Functional {
        Functional {
            parent: self.fingerprint,
            coords: self.counit.clone(),
        }
    }

    fn check_parent(&self, f: &Functional) -> Result<()> {
        if f.parent != self.fingerprint || f.coords.len() != self.dim {
            Err(invalid("functional belongs to a different coalgebra"))
        } else {
            Ok(())
        }
    }

    /// `(f·g)(x) = f(x₁)g(x₂)`.
    pub fn convolve(&self, f: &Functional, g: &Functional) -> Result<Functional> {
        self.check_parent(f)?;
        self.check_parent(g)?;
        let coords = Vector::from_iterator(
            self.dim,
            self.comult
                .iter()
                .map(|row| row.iter().map(|&(j, k, c)| c * f.coords[j] * g.coords[k]).sum()),
        );
        Ok(Functional {
            parent: self.fingerprint,
            coords,
        })
    }

    /// `f*x = f(x₂)x₁`.
    pub fn act_left(&self, f: &Functional, x: &Vector) -> Result<Vector> {
        self.check_parent(f)?;
        self.check_len(x)?;
        Ok(self.comul(x) * &f.coords)
    }

    /// `x*f = f(x₁)x₂`.
    pub fn act_right(&self, x: &Vector, f: &Functional) -> Result<Vector> {
        self.check_parent(f)?;
        self.check_len(x)?;
        Ok(self.comul(x).transpose() * &f.coords)
    }

    fn check_len(&self, x: &Vector) -> Result<()> {
        if x.len() != self.dim {
            Err(Error::DimensionError {
                expected: self.dim,
                found: x.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Matrix of `x ↦ f(x₂)x₁`, i.e. left convolution by `f`.
    pub fn left_action_matrix(&self, f: &Vector) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, row) in self.comult.iter().enumerate() {
            for &(j, k, c) in row {
                m[(j, i)] += c * f[k];
            }
        }
        m
    }

    /// The dual algebra `C*` with convolution, unit `ε` and
    /// `f*(c) = conj f(c*)`.
    pub fn dual_algebra(&self) -> StarAlgebra {
        let d = self.dim;
        let mut lmul = vec![Matrix::zeros(d, d); d];
        for (c, row) in self.comult.iter().enumerate() {
            for &(a, b, v) in row {
                lmul[a][(c, b)] += v;
            }
        }
        StarAlgebra {
            lmul,
            unit: self.counit.clone(),
            star: self.star.adjoint(),
            tol: self.tol,
        }
    }

    /// Coalgebra and *-coalgebra laws.
    pub fn verify(&self) -> Entry {
        let d = self.dim;
        let scale = self
            .comult
            .iter()
            .flatten()
            .fold(0.0f64, |a, &(_, _, c)| a.max(c.norm()))
            .max(f64::MIN_POSITIVE);
        let mut coassoc = 0.0f64;
        let mut counit = 0.0f64;
        let mut star_rev = 0.0f64;
        for i in 0..d {
            let row = &self.comult[i];
            let mut lhs = Tensor3::zeros(d, d, d);
            let mut rhs = Tensor3::zeros(d, d, d);
            for &(j, k, c) in row {
                for &(a, b, e) in &self.comult[j] {
                    lhs.add(a, b, k, c * e);
                }
                for &(a, b, e) in &self.comult[k] {
                    rhs.add(j, a, b, c * e);
                }
            }
            for (a, b, k, v) in lhs.entries() {
                coassoc = coassoc.max((v - rhs.get(a, b, k)).norm());
            }
            for (a, b, k, v) in rhs.entries() {
                coassoc = coassoc.max((v - lhs.get(a, b, k)).norm());
            }
            let mut left = Vector::zeros(d);
            let mut right = Vector::zeros(d);
            for &(j, k, c) in row {
                left[k] += c * self.counit[j];
                right[j] += c * self.counit[k];
            }
            left[i] -= ONE;
            right[i] -= ONE;
            counit = counit.max(max_abs_vec(&left)).max(max_abs_vec(&right));

            // Δ(x*) = flip((*⊗*)Δx)
            let ei = crate::numkernel::basis_vector(d, i);
            let lhs = self.comul(&self.star_of(&ei));
            let mut t = Matrix::zeros(d, d);
            for &(j, k, c) in row {
                t[(k, j)] += c.conj();
            }
            let rhs = &self.star * t * self.star.transpose();
            star_rev = star_rev.max(max_abs(&(lhs - rhs)));
        }
        let inv = max_abs(&(&self.star * self.star.map(|z| z.conj()) - Matrix::identity(d, d)));
        Entry::new("star_coalgebra")
            .residual("coassociativity", coassoc / scale, self.tol)
            .residual("counit", counit, self.tol)
            .residual("star_involution", inv, self.tol)
            .residual("star_comult_reversing", star_rev / scale, self.tol)
    }
}

/// A right comodule over a coalgebra of dimension `codim`:
/// `ρ(v_i) = Σ coaction[i][j][c] v_j ⊗ e_c`.
#[derive(Clone, Debug)]
pub struct Comodule {
    pub dim: usize,
    pub coaction: Tensor3,
    pub inner_product: Option<Matrix>,
}

impl Comodule {
    pub fn new(coaction: Tensor3) -> Self {
        Self {
            dim: coaction.dims().0,
            coaction,
            inner_product: None,
        }
    }

    pub fn codim(&self) -> usize {
        self.coaction.dims().2
    }

    /// `ρ(v)` as a `dim × codim` coefficient matrix.
    pub fn coact(&self, v: &Vector) -> Matrix {
        let (d, _, n) = self.coaction.dims();
        let mut m = Matrix::zeros(d, n);
        for (i, j, c, val) in self.coaction.entries() {
            m[(j, c)] += v[i] * val;
        }
        m
    }

    /// Coassociativity and counit law against the given coalgebra.
    pub fn verify(&self, coalg: &StarCoalgebra) -> Result<Entry> {
        let (d, d2, n) = self.coaction.dims();
        if d2 != d || n != coalg.dim() {
            return Err(invalid("comodule does not match its coalgebra"));
        }
        let mut coassoc = 0.0f64;
        let mut counit = 0.0f64;
        for i in 0..d {
            let mut lhs = Tensor3::zeros(d, n, n);
            let mut rhs = Tensor3::zeros(d, n, n);
            let mut cu = Vector::zeros(d);
            for j in 0..d {
                for c in 0..n {
                    let v = self.coaction.get(i, j, c);
                    if v == ZERO {
                        continue;
                    }
                    cu[j] += v * coalg.counit()[c];
                    for k in 0..d {
                        for e in 0..n {
                            let w = self.coaction.get(j, k, e);
                            if w != ZERO {
                                lhs.add(k, e, c, v * w);
                            }
                        }
                    }
                    for &(a, b, w) in &coalg.comult_rows()[c] {
                        rhs.add(j, a, b, v * w);
                    }
                }
            }
            for (a, b, c, v) in lhs.entries() {
                coassoc = coassoc.max((v - rhs.get(a, b, c)).norm());
            }
            for (a, b, c, v) in rhs.entries() {
                coassoc = coassoc.max((v - lhs.get(a, b, c)).norm());
            }
            cu[i] -= ONE;
            counit = counit.max(max_abs_vec(&cu));
        }
        Ok(Entry::new("comodule")
            .residual("coassociativity", coassoc, coalg.tol())
            .residual("counit", counit, coalg.tol()))
    }
}

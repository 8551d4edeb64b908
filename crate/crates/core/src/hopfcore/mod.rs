//! Finite-dimensional Hopf *-algebras as dense structure constants.

mod coalgebra;
pub mod io;

pub use coalgebra::{Comodule, Functional, SparseComult, StarCoalgebra};

use crate::error::{invalid, Error, Result};
use crate::numkernel::{basis_vector, max_abs, Matrix, Tensor3, Vector, C64, ONE, ZERO};
use crate::report::Entry;

/// Which side a functional acts on in `convolve_act`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `f*x = f(x₂)x₁`
    Left,
    /// `x*f = f(x₁)x₂`
    Right,
}

/// Raw structure constants; `FiniteHopfStar::new` validates the shapes.
///
/// * `mult[i][j][k]`: coefficient of `e_k` in `e_i e_j`
/// * `comult[i][j][k]`: coefficient of `e_j ⊗ e_k` in `Δe_i`
/// * `antipode`: column `i` is `S e_i`
/// * `star`: conjugate-linear, `x* = star · conj(x)`
#[derive(Clone, Debug)]
pub struct HopfData {
    pub labels: Vec<String>,
    pub mult: Tensor3,
    pub unit: Vector,
    pub comult: Tensor3,
    pub counit: Vector,
    pub antipode: Matrix,
    pub star: Matrix,
    pub tol: f64,
}

#[derive(Clone, Debug)]
pub struct FiniteHopfStar {
    data: HopfData,
    lmul: Vec<Matrix>,
    dmat: Vec<Matrix>,
    coalg: StarCoalgebra,
}

impl FiniteHopfStar {
    pub fn new(data: HopfData) -> Result<Self> {
        let d = data.unit.len();
        let shapes_ok = data.labels.len() == d
            && data.mult.dims() == (d, d, d)
            && data.comult.dims() == (d, d, d)
            && data.counit.len() == d
            && data.antipode.shape() == (d, d)
            && data.star.shape() == (d, d);
        if !shapes_ok {
            return Err(invalid(format!(
                "structure tensors are not consistent with dimension {d}"
            )));
        }
        if !(data.tol > 0.0) {
            return Err(invalid("tolerance must be positive"));
        }
        for m in [&data.antipode, &data.star] {
            crate::numkernel::check_finite(m, "structure matrix")?;
        }
        let lmul = (0..d)
            .map(|i| Matrix::from_fn(d, d, |k, j| data.mult.get(i, j, k)))
            .collect();
        let dmat = (0..d).map(|i| data.comult.slice0(i)).collect();
        let s_star = &data.star * data.antipode.map(|z| z.conj());
        let coalg = StarCoalgebra::from_dense(&data.comult, data.counit.clone(), s_star, data.tol)?;
        Ok(Self {
            data,
            lmul,
            dmat,
            coalg,
        })
    }

    pub fn dim(&self) -> usize {
        self.data.unit.len()
    }

    pub fn tol(&self) -> f64 {
        self.data.tol
    }

    pub fn with_tol(&self, tol: f64) -> Result<Self> {
        let mut data = self.data.clone();
        data.tol = tol;
        Self::new(data)
    }

    pub fn data(&self) -> &HopfData {
        &self.data
    }

    pub fn labels(&self) -> &[String] {
        &self.data.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.data.unit
    }

    pub fn counit(&self) -> &Vector {
        &self.data.counit
    }

    pub fn antipode(&self) -> &Matrix {
        &self.data.antipode
    }

    pub fn star_matrix(&self) -> &Matrix {
        &self.data.star
    }

    /// The underlying *-coalgebra with star `x ↦ (Sx)*`.
    pub fn coalgebra(&self) -> &StarCoalgebra {
        &self.coalg
    }

    pub fn fingerprint(&self) -> u64 {
        self.coalg.fingerprint()
    }

    pub fn basis(&self, i: usize) -> Vector {
        basis_vector(self.dim(), i)
    }

    /// Left multiplication matrix of a basis vector.
    pub fn lmul_basis(&self, i: usize) -> &Matrix {
        &self.lmul[i]
    }

    pub fn left(&self, x: &Vector) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for (i, &c) in x.iter().enumerate() {
            if c != ZERO {
                m += &self.lmul[i] * c;
            }
        }
        m
    }

    /// Right multiplication matrix: `y ↦ y x`.
    pub fn right(&self, x: &Vector) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            m.set_column(j, &(&self.lmul[j] * x));
        }
        m
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        self.left(x) * y
    }

    pub fn comul(&self, x: &Vector) -> Matrix {
        self.coalg.comul(x)
    }

    pub fn counit_of(&self, x: &Vector) -> C64 {
        self.coalg.counit_of(x)
    }

    pub fn apply_antipode(&self, x: &Vector) -> Vector {
        &self.data.antipode * x
    }

    pub fn star_of(&self, x: &Vector) -> Vector {
        &self.data.star * x.map(|z| z.conj())
    }

    /// Product in `H ⊗ H` of two coefficient matrices.
    pub fn mul2(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let d = self.dim();
        let mut out = Matrix::zeros(d, d);
        for a in 0..d {
            for b in 0..d {
                let xab = x[(a, b)];
                if xab == ZERO {
                    continue;
                }
                for c in 0..d {
                    for e in 0..d {
                        let yce = y[(c, e)];
                        if yce == ZERO {
                            continue;
                        }
                        let p = self.lmul[a].column(c);
                        let r = self.lmul[b].column(e);
                        out += (p * r.transpose()) * (xab * yce);
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| {
            (0..d).all(|j| {
                (self.lmul[i].column(j) - self.lmul[j].column(i)).norm() <= self.tol()
            })
        })
    }

    pub fn is_cocommutative(&self) -> bool {
        self.dmat
            .iter()
            .all(|m| max_abs(&(m - m.transpose())) <= self.tol())
    }

    pub fn functional(&self, coords: Vector) -> Result<Functional> {
        self.coalg.functional(coords)
    }

    pub fn counit_functional(&self) -> Functional {
        self.coalg.counit_functional()
    }

    pub fn convolve(&self, f: &Functional, g: &Functional) -> Result<Functional> {
        self.coalg.convolve(f, g)
    }

    pub fn convolve_act(&self, side: Side, f: &Functional, x: &Vector) -> Result<Vector> {
        match side {
            Side::Left => self.coalg.act_left(f, x),
            Side::Right => self.coalg.act_right(x, f),
        }
    }

    /// Matrix of `S∘S`.
    pub fn antipode_square(&self) -> Matrix {
        &self.data.antipode * &self.data.antipode
    }

    /// `x ↦ (Sx)*`, stored as a matrix applied after conjugation.
    pub fn star_coalgebra_map(&self) -> Matrix {
        self.coalg.star_matrix().clone()
    }

    /// Re-express in the basis given by the columns of `t`.
    pub fn in_basis(&self, t: &Matrix) -> Result<Self> {
        let d = self.dim();
        if t.shape() != (d, d) {
            return Err(Error::DimensionError {
                expected: d,
                found: t.nrows(),
            });
        }
        let ti = t
            .clone()
            .try_inverse()
            .ok_or_else(|| invalid("change of basis is singular"))?;
        let mut mult = Tensor3::zeros(d, d, d);
        let mut comult = Tensor3::zeros(d, d, d);
        for a in 0..d {
            let col = t.column(a).into_owned();
            let l = &ti * self.left(&col) * t;
            let dm = &ti * self.comul(&col) * ti.transpose();
            for j in 0..d {
                for k in 0..d {
                    mult.set(a, j, k, l[(k, j)]);
                    comult.set(a, j, k, dm[(j, k)]);
                }
            }
        }
        let conj_t = t.map(|z| z.conj());
        Self::new(HopfData {
            labels: (0..d).map(|i| format!("f{i}")).collect(),
            mult,
            unit: &ti * &self.data.unit,
            comult,
            counit: t.transpose() * &self.data.counit,
            antipode: &ti * &self.data.antipode * t,
            star: &ti * &self.data.star * conj_t,
            tol: self.tol(),
        })
    }
}

/// Residuals of the Hopf *-algebra laws, normalized by the largest
/// structure constant; passes iff every residual is within tolerance.
pub fn verify_hopf(h: &FiniteHopfStar) -> Entry {
    let d = h.dim();
    let tol = h.tol();
    let scale = h
        .data
        .mult
        .max_abs()
        .max(h.data.comult.max_abs())
        .max(f64::MIN_POSITIVE);
    let unit = &h.data.unit;
    let eye = Matrix::identity(d, d);

    let mut assoc = 0.0f64;
    for i in 0..d {
        for j in 0..d {
            let lhs = &h.lmul[i] * &h.lmul[j];
            let prod = h.lmul[i].column(j).into_owned();
            assoc = assoc.max(max_abs(&(lhs - h.left(&prod))));
        }
    }

    let unit_res = max_abs(&(h.left(unit) - &eye)).max(max_abs(&(h.right(unit) - &eye)));

    let mut antipode_l = 0.0f64;
    let mut antipode_r = 0.0f64;
    let mut comult_mult = 0.0f64;
    let mut counit_mult = 0.0f64;
    let mut comult_star = 0.0f64;
    let mut anti = 0.0f64;
    let mut counit_star = 0.0f64;
    let st = &h.data.star;
    let s = &h.data.antipode;
    for i in 0..d {
        let di = &h.dmat[i];
        let eps_i = h.data.counit[i];
        let mut left = -unit * eps_i;
        let mut right = -unit * eps_i;
        for j in 0..d {
            for k in 0..d {
                let c = di[(j, k)];
                if c == ZERO {
                    continue;
                }
                left += h.left(&s.column(j).into_owned()).column(k) * c;
                right += &h.lmul[j] * s.column(k) * c;
            }
        }
        antipode_l = antipode_l.max(left.iter().fold(0.0, |a, z| a.max(z.norm())));
        antipode_r = antipode_r.max(right.iter().fold(0.0, |a, z| a.max(z.norm())));

        let ei = h.basis(i);
        let si = h.star_of(&ei);
        let lhs = h.comul(&si);
        let rhs = st * di.map(|z| z.conj()) * st.transpose();
        comult_star = comult_star.max(max_abs(&(lhs - rhs)));
        counit_star = counit_star.max((h.counit_of(&si) - eps_i.conj()).norm());

        for j in 0..d {
            let ej = h.basis(j);
            let prod = h.mul(&ei, &ej);
            let lhs = h.comul(&prod);
            let rhs = h.mul2(di, &h.dmat[j]);
            comult_mult = comult_mult.max(max_abs(&(lhs - rhs)));
            counit_mult =
                counit_mult.max((h.counit_of(&prod) - eps_i * h.data.counit[j]).norm());
            let lhs = h.star_of(&prod);
            let rhs = h.mul(&h.star_of(&ej), &si);
            anti = anti.max(lhs.iter().zip(rhs.iter()).fold(0.0, |a, (x, y)| a.max((x - y).norm())));
        }
    }
    let one_one = unit * unit.transpose();
    comult_mult = comult_mult.max(max_abs(&(h.comul(unit) - one_one)));
    counit_mult = counit_mult.max((h.counit_of(unit) - ONE).norm());

    let involution = max_abs(&(st * st.map(|z| z.conj()) - &eye));
    let coalg = h.coalg.verify();
    let coassoc = coalg.residuals["coassociativity"];
    let counit = coalg.residuals["counit"];

    Entry::new("hopf_axioms")
        .residual("associativity", assoc / scale, tol)
        .residual("coassociativity", coassoc, tol)
        .residual("unit", unit_res, tol)
        .residual("counit", counit, tol)
        .residual("antipode_left", antipode_l / scale, tol)
        .residual("antipode_right", antipode_r / scale, tol)
        .residual("star_involution", involution, tol)
        .residual("star_antimultiplicative", anti / scale, tol)
        .residual("comult_star", comult_star / scale, tol)
        .residual("comult_multiplicative", comult_mult / scale, tol)
        .residual("counit_multiplicative", counit_mult, tol)
        .residual("counit_star", counit_star, tol)
        .detail("dim", d)
}

/// The dual Hopf *-algebra on the coordinate-dual basis.
pub fn dual_hopf(h: &FiniteHopfStar) -> Result<FiniteHopfStar> {
    let d = h.dim();
    let mut mult = Tensor3::zeros(d, d, d);
    let mut comult = Tensor3::zeros(d, d, d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                // (e^j e^k)(e_i) = Δ-coefficient; Δ(e^k)(e_i ⊗ e_j) = (e_i e_j)_k
                mult.set(j, k, i, h.data.comult.get(i, j, k));
                comult.set(k, i, j, h.data.mult.get(i, j, k));
            }
        }
    }
    let st = &h.data.star;
    let s = &h.data.antipode;
    let star = (st.map(|z| z.conj()) * s).transpose();
    FiniteHopfStar::new(HopfData {
        labels: h.labels().iter().map(|l| format!("{l}^")).collect(),
        mult,
        unit: h.data.counit.clone(),
        comult,
        counit: h.data.unit.clone(),
        antipode: s.transpose(),
        star,
        tol: h.tol(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::re;

    /// 𝒪(ℤ/2) in the delta basis δ_0, δ_1.
    fn z2() -> FiniteHopfStar {
        let mut mult = Tensor3::zeros(2, 2, 2);
        mult.set(0, 0, 0, ONE);
        mult.set(1, 1, 1, ONE);
        let mut comult = Tensor3::zeros(2, 2, 2);
        for x in 0..2 {
            for y in 0..2 {
                comult.set((x + y) % 2, x, y, ONE);
            }
        }
        FiniteHopfStar::new(HopfData {
            labels: vec!["d0".into(), "d1".into()],
            mult,
            unit: Vector::from_element(2, ONE),
            comult,
            counit: basis_vector(2, 0),
            antipode: Matrix::identity(2, 2),
            star: Matrix::identity(2, 2),
            tol: 1e-9,
        })
        .unwrap()
    }

    #[test]
    fn z2_passes_with_zero_residuals() {
        let e = verify_hopf(&z2());
        assert!(e.pass, "{:?}", e.residuals);
        assert!(e.residuals.values().all(|&r| r == 0.0));
    }

    #[test]
    fn zero_antipode_fails_with_unit_residual() {
        let mut data = z2().data().clone();
        data.antipode = Matrix::zeros(2, 2);
        let e = verify_hopf(&FiniteHopfStar::new(data).unwrap());
        assert!(!e.pass);
        assert!((e.residuals["antipode_left"] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn shape_mismatch_is_invalid_input() {
        let mut data = z2().data().clone();
        data.counit = Vector::zeros(3);
        assert!(matches!(FiniteHopfStar::new(data), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn counit_is_the_convolution_unit() {
        let h = z2();
        let f = h.functional(Vector::from_vec(vec![re(2.0), re(-3.0)])).unwrap();
        let eps = h.counit_functional();
        assert_eq!(h.convolve(&eps, &f).unwrap(), f);
        assert_eq!(h.convolve(&f, &eps).unwrap(), f);
    }

    #[test]
    fn foreign_functional_is_rejected() {
        let h = z2();
        let f = Functional {
            parent: h.fingerprint() ^ 1,
            coords: Vector::zeros(2),
        };
        assert!(h.convolve(&f, &h.counit_functional()).is_err());
    }

    #[test]
    fn dual_pairs_convolve_like_the_group() {
        // Evaluations at group elements multiply like ℤ/2.
        let h = z2();
        let ev1 = h.functional(basis_vector(2, 1)).unwrap();
        let sq = h.convolve(&ev1, &ev1).unwrap();
        assert_eq!(sq.coords, basis_vector(2, 0));
    }

    #[test]
    fn act_on_unit() {
        let h = z2();
        let f = h.functional(Vector::from_vec(vec![re(0.25), re(4.0)])).unwrap();
        let one = h.unit().clone();
        let out = h.convolve_act(Side::Left, &f, &one).unwrap();
        assert!((out - &one * re(4.25)).norm() < 1e-15);
    }

    #[test]
    fn dual_of_z2_passes_and_double_dual_returns() {
        let h = z2();
        let dual = dual_hopf(&h).unwrap();
        assert!(verify_hopf(&dual).pass);
        let back = dual_hopf(&dual).unwrap();
        assert_eq!(back.data().mult, h.data().mult);
        assert_eq!(back.data().comult, h.data().comult);
    }
}

//! Haar states, Peter–Weyl decompositions, unitarization of comodules and
//! unital integrals on cosemisimple coalgebras.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hopfcore::{verify_hopf, Comodule, FiniteHopfStar, Functional, StarCoalgebra};
use crate::numkernel::{
    columns, hermitian_eigen, max_abs, max_abs_vec, nullspace_scaled, psd_of_hermitian, wedderburn,
    Matrix, Tensor3, Vector, ONE, ZERO,
};
use crate::report::Entry;

#[derive(Clone, Debug)]
pub struct HaarState {
    pub functional: Functional,
    /// `gram[i][j] = h(e_i* e_j)`
    pub gram: Matrix,
    pub faithful: bool,
    pub min_eigenvalue: f64,
    pub eigenvalues: Vec<f64>,
    /// Largest residual of the two invariance identities.
    pub residual: f64,
}

/// One matrix-coalgebra block: `coeffs[i*n+j]` is `u_ij` (so that
/// `Δu_il = Σ_j u_ij ⊗ u_jl`) and `duals[i*n+j]` the functional pairing to 1
/// with `u_ij` and to 0 with every other coefficient.
#[derive(Clone, Debug)]
pub struct PwBlock {
    pub n: usize,
    pub coeffs: Vec<Vector>,
    pub duals: Vec<Vector>,
}

impl PwBlock {
    pub fn coeff(&self, i: usize, j: usize) -> &Vector {
        &self.coeffs[i * self.n + j]
    }

    pub fn dual(&self, i: usize, j: usize) -> &Vector {
        &self.duals[i * self.n + j]
    }
}

#[derive(Clone, Debug)]
pub struct PeterWeylData {
    pub blocks: Vec<PwBlock>,
}

impl PeterWeylData {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.n).collect()
    }

    /// Largest deviation of `Δu_kl` from `Σ_m u_km ⊗ u_ml`.
    pub fn comult_residual(&self, c: &StarCoalgebra) -> f64 {
        let mut worst = 0.0f64;
        for b in &self.blocks {
            for k in 0..b.n {
                for l in 0..b.n {
                    let mut expected = Matrix::zeros(c.dim(), c.dim());
                    for m in 0..b.n {
                        expected += b.coeff(k, m) * b.coeff(m, l).transpose();
                    }
                    worst = worst.max(max_abs(&(c.comul(b.coeff(k, l)) - expected)));
                }
            }
        }
        worst
    }
}

/// Solve the bi-invariance system; the unital solution must be unique.
pub fn haar_state(h: &FiniteHopfStar) -> Result<HaarState> {
    let check = verify_hopf(h);
    if !check.pass {
        return Err(Error::InvalidInput(format!(
            "input fails the Hopf laws: {:?}",
            check.residuals
        )));
    }
    let tol = h.tol();
    let (coords, residual) = bi_invariant(h.coalgebra(), h.unit())?;
    let functional = h.functional(coords)?;
    let gram = gram_matrix(h, &functional);
    let herm_defect = max_abs(&(&gram - gram.adjoint()));
    let psd = psd_of_hermitian(&gram, tol);
    let scale = psd.eigenvalues.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
    if herm_defect > tol * scale || !psd.psd {
        return Err(Error::NotCqg(format!(
            "Haar Gram matrix is not positive (min eigenvalue {:.3e}, hermiticity defect {:.3e})",
            psd.min_eigenvalue, herm_defect
        )));
    }
    Ok(HaarState {
        faithful: psd.min_eigenvalue > tol * scale,
        min_eigenvalue: psd.min_eigenvalue,
        eigenvalues: psd.eigenvalues,
        functional,
        gram,
        residual,
    })
}

/// The unique functional with `f(x₁)x₂ = x₁f(x₂) = f(x)1` and `f(1) = 1`,
/// where `1` is a given group-like; returns its coordinates and the largest
/// invariance residual.
pub fn bi_invariant(c: &StarCoalgebra, unit: &Vector) -> Result<(Vector, f64)> {
    let d = c.dim();
    // rows (i, k) for left and right invariance
    let mut m = Matrix::zeros(2 * d * d, d);
    for i in 0..d {
        let di = c.comul(&crate::numkernel::basis_vector(d, i));
        for k in 0..d {
            let left = i * d + k;
            let right = d * d + i * d + k;
            for j in 0..d {
                // h(x₁) x₂ - h(x) 1
                m[(left, j)] += di[(j, k)];
                // h(x₂) x₁ - h(x) 1
                m[(right, j)] += di[(k, j)];
            }
            m[(left, i)] -= unit[k];
            m[(right, i)] -= unit[k];
        }
    }
    let sol = nullspace_scaled(&m, c.tol(), max_abs_vec(unit))?;
    if sol.dim() != 1 {
        return Err(Error::NotCosemisimple(format!(
            "bi-invariant functionals form a space of dimension {}",
            sol.dim()
        )));
    }
    let v = sol.basis().column(0).into_owned();
    let at_one: crate::numkernel::C64 = v.iter().zip(unit.iter()).map(|(a, b)| a * b).sum();
    if at_one.norm() <= 1e-6 * v.norm() {
        return Err(Error::NotCosemisimple(
            "the invariant functional vanishes at 1, so no bi-invariant state exists".into(),
        ));
    }
    let coords = v / at_one;
    let residual = max_abs_vec(&(&m * &coords));
    Ok((coords, residual))
}

/// `[f(e_i* e_j)]` over the basis of `h`.
pub fn gram_matrix(h: &FiniteHopfStar, f: &Functional) -> Matrix {
    let d = h.dim();
    let mut g = Matrix::zeros(d, d);
    for i in 0..d {
        let left = h.left(&h.star_of(&h.basis(i)));
        for j in 0..d {
            g[(i, j)] = f.eval(&left.column(j).into_owned());
        }
    }
    g
}

/// Passes iff a faithful positive Haar state exists.
pub fn is_cqg(h: &FiniteHopfStar) -> Entry {
    let axioms = verify_hopf(h);
    let mut e = Entry::new("is_cqg").detail("hopf_axioms", axioms.pass);
    if !axioms.pass {
        e.fail();
        return e.detail("stage", "hopf_axioms");
    }
    match haar_state(h) {
        Ok(hs) => e
            .residual("bi_invariance", hs.residual, h.tol())
            .value("min_gram_eigenvalue", hs.min_eigenvalue)
            .eigenvalues(hs.eigenvalues)
            .detail("faithful", hs.faithful)
            .require(hs.faithful),
        Err(err) => {
            e.fail();
            let stage = match err {
                Error::NotCosemisimple(_) => "NotCosemisimple",
                Error::NotCqg(_) => "NotCqg",
                _ => "error",
            };
            e.detail("stage", stage).detail("error", err.to_string())
        }
    }
}

/// Wedderburn on the dual algebra, pulled back to matrix coefficients.
pub fn peter_weyl(c: &StarCoalgebra, seed: u64) -> Result<PeterWeylData> {
    let d = c.dim();
    let alg = c.dual_algebra();
    let blocks = wedderburn(&alg, seed).map_err(|e| match e {
        Error::NotSemisimple(msg) => Error::NotCosemisimple(msg),
        other => other,
    })?;
    let duals: Vec<Vector> = blocks.iter().flat_map(|b| b.units.iter().cloned()).collect();
    let w = columns(d, &duals);
    let u = w
        .transpose()
        .try_inverse()
        .ok_or_else(|| Error::NotCosemisimple("matrix units are not a basis of the dual".into()))?;
    let mut out = Vec::with_capacity(blocks.len());
    let mut offset = 0;
    for b in &blocks {
        let nn = b.n * b.n;
        out.push(PwBlock {
            n: b.n,
            coeffs: (offset..offset + nn).map(|k| u.column(k).into_owned()).collect(),
            duals: b.units.clone(),
        });
        offset += nn;
    }
    Ok(PeterWeylData { blocks: out })
}

/// One simple comodule per block: `ρ(v_l) = Σ_i v_i ⊗ u_il`.
pub fn simple_comodules(pw: &PeterWeylData) -> Vec<Comodule> {
    pw.blocks
        .iter()
        .map(|b| {
            let codim = b.coeffs[0].len();
            let mut t = Tensor3::zeros(b.n, b.n, codim);
            for l in 0..b.n {
                for i in 0..b.n {
                    for (x, v) in b.coeff(i, l).iter().enumerate() {
                        t.set(l, i, x, *v);
                    }
                }
            }
            Comodule::new(t)
        })
        .collect()
}

/// Matrix coefficients `t_ji` of a comodule: `ρ(v_i) = Σ_j v_j ⊗ t_ji`.
pub fn matrix_coefficients(v: &Comodule) -> Vec<Vec<Vector>> {
    let n = v.dim;
    let codim = v.codim();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| Vector::from_fn(codim, |c, _| v.coaction.get(i, j, c)))
                .collect()
        })
        .collect()
}

/// Unitarity condition `P·S(T) = T*·P` entrywise, with `(T*)_ij = t_ji*`.
pub fn compatibility_residual(h: &FiniteHopfStar, v: &Comodule, p: &Matrix) -> f64 {
    let t = matrix_coefficients(v);
    let n = v.dim;
    let mut worst = 0.0f64;
    for i in 0..n {
        for m in 0..n {
            let mut r = Vector::zeros(h.dim());
            for l in 0..n {
                r += h.apply_antipode(&t[l][m]) * p[(i, l)];
            }
            for j in 0..n {
                r -= h.star_of(&t[j][i]) * p[(j, m)];
            }
            worst = worst.max(max_abs_vec(&r));
        }
    }
    worst
}

/// Haar-average the coordinate inner product; returns `P` and its
/// compatibility residual.
pub fn unitarize(v: &Comodule, h: &FiniteHopfStar, haar: &HaarState) -> Result<(Matrix, f64)> {
    let check = v.verify(h.coalgebra())?;
    if !check.pass {
        return Err(Error::InvalidInput(format!(
            "comodule laws fail: {:?}",
            check.residuals
        )));
    }
    let t = matrix_coefficients(v);
    let n = v.dim;
    let mut p = Matrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            let mut acc = ZERO;
            for m in 0..n {
                acc += haar.functional.eval(&h.mul(&h.star_of(&t[m][j]), &t[m][i]));
            }
            p[(j, i)] = acc;
        }
    }
    let (vals, _) = hermitian_eigen(&p);
    if vals.first().map_or(true, |&x| x <= 0.0) && n > 0 {
        return Err(Error::InternalError(
            "averaged inner product is singular".into(),
        ));
    }
    let res = compatibility_residual(h, v, &p);
    Ok((p, res))
}

/// Outcome of the unital-integral computation.
#[derive(Clone, Debug, Serialize)]
pub struct IntegralCheck {
    pub invariance_residual: f64,
    pub solution_space_dim: usize,
}

/// The unique functional with `h_C(c₁)c₂ = h_C(c)1_C` and `h_C(1_C) = 1`,
/// read off as the dual functional of the trivial block containing `1_C`.
pub fn coalgebra_integral(
    c: &StarCoalgebra,
    one_c: &Vector,
    pw: &PeterWeylData,
) -> Result<(Functional, IntegralCheck)> {
    let d = c.dim();
    let tol = c.tol();
    let scale = one_c.norm().max(1.0);
    let trivial = pw
        .blocks
        .iter()
        .filter(|b| b.n == 1)
        .find(|b| (b.coeffs[0].clone() - one_c).norm() <= 1e-6 * scale)
        .ok_or_else(|| {
            Error::NotCosemisimple("no one-dimensional block is spanned by 1_C".into())
        })?;
    let f = c.functional(trivial.duals[0].clone())?;

    // invariance system, used for the uniqueness check
    let mut m = Matrix::zeros(d * d, d);
    for i in 0..d {
        let di = c.comul(&crate::numkernel::basis_vector(d, i));
        for k in 0..d {
            for j in 0..d {
                m[(i * d + k, j)] += di[(j, k)];
            }
            m[(i * d + k, i)] -= one_c[k];
        }
    }
    let sol = nullspace_scaled(&m, tol, max_abs_vec(one_c))?;
    let residual = max_abs_vec(&(&m * &f.coords)).max((f.eval(one_c) - ONE).norm());
    if sol.dim() == 0 {
        return Err(Error::NotCosemisimple(
            "the invariance system has no nonzero solution".into(),
        ));
    }
    Ok((
        f,
        IntegralCheck {
            invariance_residual: residual,
            solution_space_dim: sol.dim(),
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{group_algebra, group_function_algebra, kac_paljutkin, sweedler, GroupTable};
    use crate::numkernel::{basis_vector, re, Tensor3};

    #[test]
    fn haar_on_group_functions_is_uniform() {
        let g = GroupTable::symmetric3();
        let h = group_function_algebra(&g).unwrap();
        let hs = haar_state(&h).unwrap();
        for z in hs.functional.coords.iter() {
            assert!((z - re(1.0 / 6.0)).norm() < 1e-12);
        }
        assert!(hs.faithful);
    }

    #[test]
    fn haar_on_group_algebra_is_identity_coefficient() {
        let g = GroupTable::cyclic(2).unwrap();
        let hs = haar_state(&group_algebra(&g).unwrap()).unwrap();
        assert!((hs.functional.coords.clone() - basis_vector(2, g.identity)).norm() < 1e-12);
    }

    #[test]
    fn sweedler_is_rejected_at_haar() {
        let err = haar_state(&sweedler().unwrap()).unwrap_err();
        assert!(matches!(err, Error::NotCosemisimple(_)), "{err}");
        let e = is_cqg(&sweedler().unwrap());
        assert!(!e.pass);
        assert_eq!(e.details["stage"], "NotCosemisimple");
    }

    #[test]
    fn kac_paljutkin_haar_is_faithful() {
        let kp = kac_paljutkin().unwrap();
        let hs = haar_state(&kp).unwrap();
        assert!(hs.faithful);
        assert!(hs.min_eigenvalue > 0.0);
        assert!(is_cqg(&kp).pass);
        // convolving with the Haar state absorbs any functional
        for k in 0..8 {
            let f = kp.functional(basis_vector(8, k)).unwrap();
            let hf = kp.convolve(&hs.functional, &f).unwrap();
            let expected = &hs.functional.coords * f.eval(kp.unit());
            assert!((hf.coords - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn peter_weyl_block_sizes() {
        let s3 = group_function_algebra(&GroupTable::symmetric3()).unwrap();
        let pw = peter_weyl(s3.coalgebra(), 0).unwrap();
        assert_eq!(pw.sizes(), vec![1, 1, 2]);
        assert!(pw.comult_residual(s3.coalgebra()) < 1e-9);

        let z3 = group_function_algebra(&GroupTable::cyclic(3).unwrap()).unwrap();
        assert_eq!(peter_weyl(z3.coalgebra(), 0).unwrap().sizes(), vec![1, 1, 1]);

        let kp = kac_paljutkin().unwrap();
        let pw = peter_weyl(kp.coalgebra(), 0).unwrap();
        assert_eq!(pw.sizes(), vec![1, 1, 1, 1, 2]);
        assert!(pw.comult_residual(kp.coalgebra()) < 1e-9);
    }

    #[test]
    fn trivial_coalgebra() {
        let c = StarCoalgebra::new(
            1,
            vec![vec![(0, 0, ONE)]],
            Vector::from_element(1, ONE),
            Matrix::identity(1, 1),
            1e-9,
        )
        .unwrap();
        let pw = peter_weyl(&c, 0).unwrap();
        assert_eq!(pw.sizes(), vec![1]);
        let (f, chk) = coalgebra_integral(&c, &Vector::from_element(1, ONE), &pw).unwrap();
        assert!((f.coords[0] - ONE).norm() < 1e-12);
        assert_eq!(chk.solution_space_dim, 1);
    }

    #[test]
    fn integral_on_group_functions_is_uniform() {
        let z2 = group_function_algebra(&GroupTable::cyclic(2).unwrap()).unwrap();
        let pw = peter_weyl(z2.coalgebra(), 0).unwrap();
        let (f, chk) = coalgebra_integral(z2.coalgebra(), z2.unit(), &pw).unwrap();
        assert!(chk.invariance_residual < 1e-12);
        assert_eq!(chk.solution_space_dim, 1);
        for z in f.coords.iter() {
            assert!((z - re(0.5)).norm() < 1e-12);
        }
    }

    fn trivial_comodule(codim: usize, one: &Vector) -> Comodule {
        let mut t = Tensor3::zeros(1, 1, codim);
        for c in 0..codim {
            t.set(0, 0, c, one[c]);
        }
        Comodule::new(t)
    }

    /// Regular comodule `ρ = Δ` on the basis.
    fn regular(h: &FiniteHopfStar) -> Comodule {
        let d = h.dim();
        let mut t = Tensor3::zeros(d, d, d);
        for (i, row) in h.coalgebra().comult_rows().iter().enumerate() {
            for &(j, k, c) in row {
                t.add(i, j, k, c);
            }
        }
        Comodule::new(t)
    }

    #[test]
    fn unitarize_examples() {
        let z2 = group_function_algebra(&GroupTable::cyclic(2).unwrap()).unwrap();
        let haar = haar_state(&z2).unwrap();
        let (p, res) = unitarize(&trivial_comodule(2, z2.unit()), &z2, &haar).unwrap();
        assert!((p[(0, 0)] - ONE).norm() < 1e-12);
        assert!(res < 1e-12);

        let (p, res) = unitarize(&regular(&z2), &z2, &haar).unwrap();
        assert!((p - Matrix::identity(2, 2)).norm() < 1e-12);
        assert!(res < 1e-12);

        let kp = kac_paljutkin().unwrap();
        let haar = haar_state(&kp).unwrap();
        let (p, res) = unitarize(&regular(&kp), &kp, &haar).unwrap();
        assert!(res < 1e-9);
        assert!(hermitian_eigen(&p).0[0] > 0.0);
    }

    #[test]
    fn simple_comodules_satisfy_the_laws() {
        let g = GroupTable::symmetric3();
        let h = group_function_algebra(&g).unwrap();
        let pw = peter_weyl(h.coalgebra(), 0).unwrap();
        let simples = simple_comodules(&pw);
        let mut dims: Vec<usize> = simples.iter().map(|v| v.dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 1, 2]);
        for v in &simples {
            assert!(v.verify(h.coalgebra()).unwrap().pass);
        }
    }
}

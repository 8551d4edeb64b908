//! The splitting expectation `E = (h_C⊗id)(π⊗id)Δ` onto a coideal, the
//! functional `φ = h_C∘π`, (complete) positivity, `S²`-invariance, the
//! φ-relative Fourier transform and the θ-functional.

use serde::Serialize;

use crate::coideal::{quotient_coalgebra, CoidealSubalgebra, QuotientCoalgebra};
use crate::cqgtools::{coalgebra_integral, gram_matrix, haar_state, HaarState, PeterWeylData};
use crate::error::{Error, Result};
use crate::hopfcore::{FiniteHopfStar, Functional};
use crate::numkernel::{
    columns, inv_sqrt_pd, max_abs, max_abs_vec, psd_of_hermitian, random_vector, Matrix,
    Subspace, Vector, C64, ZERO,
};
use crate::report::Entry;

#[derive(Clone, Debug)]
pub struct Expectation {
    pub coideal: CoidealSubalgebra,
    pub quotient: QuotientCoalgebra,
    pub h_c: Functional,
    pub phi: Functional,
    /// `E` on the basis of `H`.
    pub map: Matrix,
    pub validation: Entry,
}

impl Expectation {
    pub fn parent(&self) -> &FiniteHopfStar {
        &self.coideal.parent
    }

    pub fn apply(&self, x: &Vector) -> Vector {
        &self.map * x
    }

    pub fn peter_weyl(&self) -> Result<&PeterWeylData> {
        self.quotient.peter_weyl()
    }
}

/// `φ = h_C∘π` as coordinates on `H`, together with `h_C`.
fn integral_and_phi(q: &QuotientCoalgebra) -> Result<(Functional, Functional)> {
    let pw = q.peter_weyl()?;
    let (h_c, check) = coalgebra_integral(&q.coalg, &q.one_c, pw)?;
    if check.solution_space_dim != 1 {
        return Err(Error::NotCosemisimple(format!(
            "unital integral is not unique ({} solutions)",
            check.solution_space_dim
        )));
    }
    let phi = q.proj.transpose() * &h_c.coords;
    Ok((h_c, q.parent.functional(phi)?))
}

/// `x ↦ φ(x₁)x₂` as a matrix.
fn right_convolution(h: &FiniteHopfStar, phi: &Functional) -> Matrix {
    let d = h.dim();
    let mut m = Matrix::zeros(d, d);
    for i in 0..d {
        let col = h.comul(&h.basis(i)).transpose() * &phi.coords;
        m.set_column(i, &col);
    }
    m
}

/// Residuals of the four splitting properties plus idempotence.
fn expectation_residuals(a: &CoidealSubalgebra, map: &Matrix) -> Vec<(&'static str, f64)> {
    let h = &a.parent;
    let d = h.dim();
    let basis = a.space.vectors();

    let mut fixes = 0.0f64;
    for b in &basis {
        fixes = fixes.max(max_abs_vec(&(map * b - b)));
    }
    let mut linear = 0.0f64;
    for i in 0..d {
        let x = h.basis(i);
        let ex = map * &x;
        for b in &basis {
            linear = linear.max(max_abs_vec(&(map * h.mul(&x, b) - h.mul(&ex, b))));
        }
    }
    let mut colinear = 0.0f64;
    for i in 0..d {
        let x = h.basis(i);
        let lhs = h.comul(&(map * &x));
        let rhs = map * h.comul(&x);
        colinear = colinear.max(max_abs(&(lhs - rhs)));
    }
    let image = Subspace::from_columns(map, h.tol());
    let image_res = image
        .compare(&a.space)
        .map(|c| c.residual)
        .unwrap_or(f64::INFINITY);
    let image_res = if image.dim() == a.dim() {
        image_res
    } else {
        f64::INFINITY
    };
    let idem = max_abs(&(map * map - map));
    vec![
        ("fixes_coideal", fixes),
        ("right_module_map", linear),
        ("comodule_map", colinear),
        ("image_is_coideal", image_res),
        ("idempotent", idem),
    ]
}

pub fn build_expectation(a: &CoidealSubalgebra) -> Result<Expectation> {
    let q = quotient_coalgebra(a)?;
    let (h_c, phi) = integral_and_phi(&q)?;
    let map = right_convolution(&a.parent, &phi);
    let tol = a.parent.tol();
    let scale = max_abs(&map).max(1.0);
    let mut validation = Entry::new("expectation").detail("dim_A", a.dim());
    for (name, r) in expectation_residuals(a, &map) {
        validation = validation.residual(name, r, tol * scale);
    }
    if !validation.pass {
        return Err(Error::ConstructionFailure(format!(
            "expectation fails its splitting properties: {:?}",
            validation.residuals
        )));
    }
    Ok(Expectation {
        coideal: a.clone(),
        quotient: q,
        h_c,
        phi,
        map,
        validation,
    })
}

pub fn phi(a: &CoidealSubalgebra) -> Result<Functional> {
    let q = quotient_coalgebra(a)?;
    Ok(integral_and_phi(&q)?.1)
}

/// Outcome of a Gram positivity test. A Gram matrix that is not Hermitian
/// cannot come from a positive functional, so the verdict is negative and
/// the eigen-data refer to its Hermitian part.
#[derive(Clone, Debug, Serialize)]
pub struct Positivity {
    pub positive: bool,
    pub min_eigenvalue: f64,
    pub hermitian_defect: f64,
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub min_eigenvector: Vector,
}

pub fn gram_positivity(g: &Matrix, tol: f64) -> Positivity {
    let herm = (g + g.adjoint()) * C64::new(0.5, 0.0);
    let defect = max_abs(&(g - g.adjoint()));
    let scale = max_abs(g).max(1.0);
    let psd = psd_of_hermitian(&herm, tol);
    Positivity {
        positive: psd.psd && defect <= tol * scale,
        min_eigenvalue: psd.min_eigenvalue,
        hermitian_defect: defect,
        eigenvalues: psd.eigenvalues,
        min_eigenvector: psd.min_eigenvector,
    }
}

/// Gram matrix `[f(e_i* e_j)]` and its positivity.
pub fn positivity_check(h: &FiniteHopfStar, f: &Functional) -> Positivity {
    gram_positivity(&gram_matrix(h, f), h.tol())
}

/// Block operator `[ρ(E(e_i* e_j))]` with `ρ` the left regular
/// representation of `A` on `(A, h(b*a))`; its verdict is cross-checked
/// against `positivity_check(φ)`.
pub fn complete_positivity_check(e: &Expectation, haar: &HaarState) -> Result<Entry> {
    let h = e.parent();
    let tol = h.tol();
    let a = &e.coideal;
    if !haar.faithful {
        return Err(Error::InvalidInput(
            "Haar state is not faithful, so the regular representation is not faithful".into(),
        ));
    }
    let d = h.dim();
    let na = a.dim();
    let b = a.space.basis();
    // ⟨a, b⟩ = h(b* a) = βᴴ (Bᴴ G B) α in coordinates a = Bα, b = Bβ
    let ga = b.adjoint() * &haar.gram * b;
    let (sqrt, inv_sqrt) = inv_sqrt_pd(&ga)
        .ok_or_else(|| Error::InternalError("Haar state degenerates on the coideal".into()))?;
    let to_on = |m: &Matrix| -> Matrix { &sqrt * m * &inv_sqrt };
    let mut block = Matrix::zeros(d * na, d * na);
    for i in 0..d {
        let xi = h.star_of(&h.basis(i));
        for j in 0..d {
            let z = e.apply(&h.mul(&xi, &h.basis(j)));
            let rho = to_on(&(b.adjoint() * h.left(&z) * b));
            block.view_mut((i * na, j * na), (na, na)).copy_from(&rho);
        }
    }
    let cp = gram_positivity(&block, tol);
    let p = positivity_check(h, &e.phi);
    if cp.positive != p.positive {
        return Err(Error::InconsistencyError(format!(
            "complete positivity of E ({}, min {:.3e}) disagrees with positivity of phi ({}, min {:.3e})",
            cp.positive, cp.min_eigenvalue, p.positive, p.min_eigenvalue
        )));
    }
    Ok(Entry::new("complete_positivity")
        .require(cp.positive)
        .value("min_eigenvalue", cp.min_eigenvalue)
        .value("hermitian_defect", cp.hermitian_defect)
        .value("phi_min_eigenvalue", p.min_eigenvalue)
        .detail("positive", cp.positive)
        .detail("phi_positive", p.positive)
        .detail("agree", true))
}

/// `(S²(A) = A, dim(S²(A) + A) − dim A)`.
pub fn s2_invariance(a: &CoidealSubalgebra) -> (bool, usize) {
    let s2 = a.parent.antipode_square();
    subspace_s2_invariance(&a.space, &s2)
}

pub(crate) fn subspace_s2_invariance(space: &Subspace, s2: &Matrix) -> (bool, usize) {
    let image = space.image(s2);
    let Ok(sum) = space.sum(&image) else {
        return (false, 0);
    };
    let defect = sum.dim() - space.dim();
    (defect == 0 && image.dim() == space.dim(), defect)
}

/// Witness of non-positivity: the most negative Gram eigenvector as an
/// element of `H`, scaled to `h(x*x) = 1`.
/// With `G[i][j] = φ(e_i* e_j)` and `x = Σ v_j e_j`, `Re φ(x*x) = vᴴ G v`.
pub(crate) fn witness(p: &Positivity, haar_gram: Option<&Matrix>) -> Vector {
    let x = p.min_eigenvector.clone();
    let norm = haar_gram
        .map(|g| (x.adjoint() * g * &x)[(0, 0)].re)
        .filter(|n| *n > 0.0)
        .unwrap_or_else(|| x.norm_squared());
    x / C64::new(norm.sqrt(), 0.0)
}

/// Tests the biconditional `S²(A) = A ⇔ φ positive`.
pub fn decide_expected(a: &CoidealSubalgebra) -> Result<Entry> {
    let h = &a.parent;
    let (invariant, defect) = s2_invariance(a);
    let phi = phi(a)?;
    let p = positivity_check(h, &phi);
    let consistent = invariant == p.positive;
    let mut e = Entry::new("decide_expected")
        .require(consistent)
        .value("min_eigenvalue", p.min_eigenvalue)
        .value("hermitian_defect", p.hermitian_defect)
        .detail("invariant", invariant)
        .detail("defect_dim", defect)
        .detail("positive", p.positive)
        .detail("consistent", consistent)
        .detail("degree_range", "all");
    if !p.positive {
        let haar = haar_state(h).ok();
        let x = witness(&p, haar.as_ref().map(|hs| &hs.gram));
        let value = phi.eval(&h.mul(&h.star_of(&x), &x));
        e = e
            .detail("witness", crate::hopfcore::io::vector_to_pairs(&x))
            .value("witness_value", value.re);
    }
    Ok(e)
}

/// `𝓕x` as a functional on `C` and blockwise `F_α[i][j] = 𝓕x(u^α_ij)`.
#[derive(Clone, Debug)]
pub struct FourierImage {
    pub functional: Vector,
    pub blocks: Vec<Matrix>,
}

impl FourierImage {
    fn from_functional(f: Vector, pw: &PeterWeylData) -> Self {
        let blocks = pw
            .blocks
            .iter()
            .map(|b| Matrix::from_fn(b.n, b.n, |i, j| dot(&f, b.coeff(i, j))))
            .collect();
        Self {
            functional: f,
            blocks,
        }
    }
}

fn dot(f: &Vector, x: &Vector) -> C64 {
    f.iter().zip(x.iter()).map(|(a, b)| a * b).sum()
}

/// `c ↦ φ(S(x)·σ(c))`, checked to be independent of the lift.
pub fn fourier(x: &Vector, e: &Expectation) -> Result<FourierImage> {
    let h = e.parent();
    let q = &e.quotient;
    let sx = h.apply_antipode(x);
    let ls = h.left(&sx);
    let row = (ls.transpose() * &e.phi.coords).transpose();
    let f = (row.clone() * &q.section).transpose();
    let mut lift = 0.0f64;
    for k in q.kernel.vectors() {
        lift = lift.max(dot(&row.transpose(), &k).norm());
    }
    let scale = max_abs_vec(&f).max(x.norm()).max(1.0);
    if lift > h.tol() * 100.0 * scale {
        return Err(Error::InternalError(format!(
            "Fourier transform depends on the lift (residual {lift:.3e})"
        )));
    }
    Ok(FourierImage::from_functional(f, e.peter_weyl()?))
}

/// `θ ∈ C` and its blockwise coefficients `θ_α[i][j]`, so that
/// `θ(f) = Σ_α Σ_ij θ_α[i][j]·F_α[i][j]`.
#[derive(Clone, Debug)]
pub struct ThetaFunctional {
    pub element: Vector,
    pub blocks: Vec<Matrix>,
}

impl ThetaFunctional {
    pub fn eval_blocks(&self, f: &[Matrix]) -> C64 {
        self.blocks
            .iter()
            .zip(f)
            .map(|(t, m)| t.component_mul(m).sum())
            .fold(ZERO, |a, b| a + b)
    }

    /// Positivity of `θ` on each `C_α* ≅ M_n`: `θ(F*F) = tr(θ_αᵀ F^H F)`.
    pub fn block_positivity(&self, tol: f64) -> Vec<Positivity> {
        self.blocks
            .iter()
            .map(|t| gram_positivity(&t.transpose(), tol))
            .collect()
    }
}

/// `S²` on `C`, provided it preserves the kernel of `π`.
pub fn descended_s2(q: &QuotientCoalgebra, s2: &Matrix) -> Result<Matrix> {
    descend_map(&q.kernel, &q.proj, &q.section, s2, q.parent.tol())
}

pub(crate) fn descend_map(
    kernel: &Subspace,
    proj: &Matrix,
    section: &Matrix,
    s2: &Matrix,
    tol: f64,
) -> Result<Matrix> {
    let mut leak = 0.0f64;
    for k in kernel.vectors() {
        leak = leak.max(max_abs_vec(&(proj * (s2 * &k))));
    }
    let scale = max_abs(s2).max(1.0);
    if leak > tol * 10.0 * scale {
        return Err(Error::NotApplicable(format!(
            "S² does not preserve the kernel of the quotient map (leak {leak:.3e})"
        )));
    }
    Ok(proj * s2 * section)
}

/// `θ = Σ ⟨e^i, S² e_{i(1)}⟩ e_{i(2)}` over the Peter–Weyl basis
/// `e = u^α_ij` with `Δu_ij = Σ_m u_im ⊗ u_mj`.
pub fn theta(q: &QuotientCoalgebra, s2: &Matrix) -> Result<ThetaFunctional> {
    let s2c = descended_s2(q, s2)?;
    Ok(theta_on(q.peter_weyl()?, &s2c, q.dim()))
}

pub(crate) fn theta_on(pw: &PeterWeylData, s2c: &Matrix, dim: usize) -> ThetaFunctional {
    let mut element = Vector::zeros(dim);
    for b in &pw.blocks {
        for i in 0..b.n {
            for j in 0..b.n {
                for m in 0..b.n {
                    let w = dot(b.dual(i, j), &(s2c * b.coeff(i, m)));
                    element += b.coeff(m, j) * w;
                }
            }
        }
    }
    let blocks = pw
        .blocks
        .iter()
        .map(|b| Matrix::from_fn(b.n, b.n, |i, j| dot(b.dual(i, j), &element)))
        .collect();
    ThetaFunctional { element, blocks }
}

/// Both sides of `φ((S²y)* S²x) = θ((𝓕y)* 𝓕x)`, with the product and star
/// of `C•` taken blockwise as matrix product and conjugate transpose.
pub fn plancherel_sides(x: &Vector, y: &Vector, e: &Expectation) -> Result<(C64, C64)> {
    let h = e.parent();
    let s2 = h.antipode_square();
    let th = theta(&e.quotient, &s2)?;
    let fx = fourier(x, e)?;
    let fy = fourier(y, e)?;
    let prod: Vec<Matrix> = fy
        .blocks
        .iter()
        .zip(&fx.blocks)
        .map(|(a, b)| a.adjoint() * b)
        .collect();
    let rhs = th.eval_blocks(&prod);
    let lhs = e
        .phi
        .eval(&h.mul(&h.star_of(&(&s2 * y)), &(&s2 * x)));
    Ok((lhs, rhs))
}

pub fn plancherel_check(x: &Vector, y: &Vector, e: &Expectation) -> Result<f64> {
    let (invariant, defect) = s2_invariance(&e.coideal);
    if !invariant {
        return Err(Error::NotApplicable(format!(
            "S²(A) ≠ A (defect {defect})"
        )));
    }
    let (l, r) = plancherel_sides(x, y, e)?;
    Ok((l - r).norm())
}

/// Largest Plancherel residual over `pairs` seeded random pairs.
pub fn plancherel_random(e: &Expectation, pairs: usize, seed: u64) -> Result<f64> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let d = e.parent().dim();
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let x = random_vector(&mut rng, d);
        let y = random_vector(&mut rng, d);
        worst = worst.max(plancherel_check(&x, &y, e)?);
    }
    Ok(worst)
}

/// Matrix of `x ↦ 𝓕x` into the functional coordinates on `C`.
pub fn fourier_matrix(e: &Expectation) -> Result<Matrix> {
    let h = e.parent();
    let cols: Vec<Vector> = (0..h.dim())
        .map(|i| fourier(&h.basis(i), e).map(|f| f.functional))
        .collect::<Result<_>>()?;
    Ok(columns(e.quotient.dim(), &cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coideal::{coideal_closure, trivial_coideals, verify_coideal};
    use crate::corpus::{group_function_algebra, kac_paljutkin, GroupTable};
    use crate::numkernel::{basis_vector, rank, re, ONE};

    fn coset_coideal(g: &GroupTable, k: &[usize]) -> CoidealSubalgebra {
        let h = group_function_algebra(g).unwrap();
        let n = g.order();
        let vecs: Vec<Vector> = g
            .right_cosets(k)
            .into_iter()
            .map(|c| {
                let mut v = Vector::zeros(n);
                for x in c {
                    v[x] = ONE;
                }
                v
            })
            .collect();
        verify_coideal(&Subspace::span(n, &vecs, 1e-9).unwrap(), &h).unwrap()
    }

    #[test]
    fn trivial_expectations() {
        let kp = kac_paljutkin().unwrap();
        let (scalars, whole) = trivial_coideals(&kp).unwrap();
        let e = build_expectation(&whole).unwrap();
        assert!(max_abs(&(e.map.clone() - Matrix::identity(8, 8))) < 1e-12);
        assert!((e.phi.coords.clone() - kp.counit()).norm() < 1e-12);

        let haar = haar_state(&kp).unwrap();
        let e = build_expectation(&scalars).unwrap();
        assert!((e.phi.coords.clone() - &haar.functional.coords).norm() < 1e-12);
        for i in 0..8 {
            let x = basis_vector(8, i);
            let expected = kp.unit() * haar.functional.eval(&x);
            assert!((e.apply(&x) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn coset_average_oracle() {
        let g = GroupTable::symmetric3();
        let k = g.generated(&[g.index_of("(123)").unwrap()]);
        let a = coset_coideal(&g, &k);
        let e = build_expectation(&a).unwrap();
        let mut oracle = Matrix::zeros(6, 6);
        for y in 0..6 {
            for &kk in &k {
                // E(f)(y) = mean over k of f(ky)
                oracle[(y, g.mul[kk][y])] += re(1.0 / k.len() as f64);
            }
        }
        assert!(max_abs(&(e.map.clone() - oracle)) < 1e-12);
        for x in 0..6 {
            let expected = if k.contains(&x) { 1.0 / 3.0 } else { 0.0 };
            assert!((e.phi.coords[x] - re(expected)).norm() < 1e-12);
        }
    }

    #[test]
    fn positivity_examples() {
        let s3 = group_function_algebra(&GroupTable::symmetric3()).unwrap();
        let haar = haar_state(&s3).unwrap();
        let p = positivity_check(&s3, &haar.functional);
        assert!(p.positive);
        assert!((p.min_eigenvalue - 1.0 / 6.0).abs() < 1e-12);

        let z2 = group_function_algebra(&GroupTable::cyclic(2).unwrap()).unwrap();
        let p = positivity_check(&z2, &z2.counit_functional());
        assert!(p.positive);
        assert!(p.min_eigenvalue.abs() < 1e-12);
        let mut v = Vector::zeros(2);
        v[0] = ONE;
        v[1] = -ONE;
        let p = positivity_check(&z2, &z2.functional(v).unwrap());
        assert!(!p.positive);
        assert!(p.min_eigenvalue < 0.0);
    }

    #[test]
    fn kp_coideals_are_completely_positive() {
        let kp = kac_paljutkin().unwrap();
        let haar = haar_state(&kp).unwrap();
        let mut gen = Vector::zeros(8);
        for i in 0..4 {
            gen[i] = ONE;
        }
        for gens in [vec![], vec![basis_vector(8, 1)], vec![basis_vector(8, 0) + basis_vector(8, 1)]] {
            let a = coideal_closure(&gens, &kp).unwrap();
            let e = build_expectation(&a).unwrap_or_else(|err| panic!("{} {err}", a.dim()));
            let cp = complete_positivity_check(&e, &haar).unwrap();
            assert!(cp.pass, "{cp:?}");
            assert_eq!(s2_invariance(&a), (true, 0));
            assert!(decide_expected(&a).unwrap().pass);
        }
    }

    #[test]
    fn fourier_examples() {
        let z2 = group_function_algebra(&GroupTable::cyclic(2).unwrap()).unwrap();
        let (scalars, whole) = trivial_coideals(&z2).unwrap();
        let e = build_expectation(&scalars).unwrap();
        // 𝓕(1) = h_C
        let f1 = fourier(z2.unit(), &e).unwrap();
        assert!((f1.functional.clone() - &e.h_c.coords).norm() < 1e-12);
        // classical two-point transform: full rank
        assert_eq!(rank(&fourier_matrix(&e).unwrap(), 1e-9), 2);

        let e = build_expectation(&whole).unwrap();
        let x = basis_vector(2, 1);
        let f = fourier(&x, &e).unwrap();
        assert!(f.functional.norm() < 1e-12);
        let (l, r) = plancherel_sides(&x, z2.unit(), &e).unwrap();
        assert!(l.norm() < 1e-12 && r.norm() < 1e-12);
    }

    #[test]
    fn theta_on_trivial_and_matrix_blocks() {
        let kp = kac_paljutkin().unwrap();
        let (scalars, whole) = trivial_coideals(&kp).unwrap();
        let s2 = kp.antipode_square();
        let q = quotient_coalgebra(&whole).unwrap();
        let th = theta(&q, &s2).unwrap();
        assert_eq!(th.blocks.len(), 1);
        assert!((th.blocks[0][(0, 0)] - ONE).norm() < 1e-12);

        let q = quotient_coalgebra(&scalars).unwrap();
        let th = theta(&q, &s2).unwrap();
        let pw = q.peter_weyl().unwrap();
        for (b, t) in pw.blocks.iter().zip(&th.blocks) {
            let expected = Matrix::identity(b.n, b.n) * re(b.n as f64);
            assert!(max_abs(&(t - expected)) < 1e-9, "{t}");
        }
        assert!(th.block_positivity(1e-9).iter().all(|p| p.positive));
    }

    #[test]
    fn theta_matches_coordinate_formula() {
        let g = GroupTable::symmetric3();
        let a = coset_coideal(&g, &g.generated(&[g.index_of("(12)").unwrap()]));
        let q = quotient_coalgebra(&a).unwrap();
        let s2 = a.parent.antipode_square();
        let th = theta(&q, &s2).unwrap();
        let s2c = descended_s2(&q, &s2).unwrap();
        let m = q.dim();
        let mut direct = Vector::zeros(m);
        for i in 0..m {
            let dc = q.coalg.comul(&basis_vector(m, i));
            for j in 0..m {
                for k in 0..m {
                    direct[k] += s2c[(i, j)] * dc[(j, k)];
                }
            }
        }
        assert!((th.element.clone() - direct).norm() < 1e-9);
    }

    #[test]
    fn plancherel_on_finite_coideals() {
        let kp = kac_paljutkin().unwrap();
        for gens in [vec![], vec![basis_vector(8, 4)], vec![basis_vector(8, 5) + basis_vector(8, 6)]] {
            let a = coideal_closure(&gens, &kp).unwrap();
            let e = build_expectation(&a).unwrap();
            assert!(plancherel_random(&e, 20, 0).unwrap() < 1e-8);
            assert!((plancherel_sides(kp.unit(), kp.unit(), &e).unwrap().0 - ONE).norm() < 1e-12);
        }
    }
}

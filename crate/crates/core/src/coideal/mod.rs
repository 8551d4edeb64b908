//! Right coideal *-subalgebras `A ⊆ H`, quotient coalgebras `C = H/HA⁺`,
//! invariants and the Galois round trips between them.

mod modules;

pub use modules::{
    adjunction_check, conjugate_flip, cotensor, flatness_spotcheck, flip_right, hopf_module_free,
    hopf_module_regular, hopf_module_tensor, random_submodule, regular_quotient_comodule,
    relative_tensor_dim, trivial_quotient_comodule, LeftModule, RelativeHopfModule, RightModule,
};

use crate::cqgtools::{peter_weyl, PeterWeylData};
use crate::error::{invalid, Error, Result};
use crate::hopfcore::{FiniteHopfStar, StarCoalgebra};
use crate::numkernel::{
    columns, max_abs, max_abs_vec, nullspace, nullspace_scaled, Matrix, Subspace, Vector,
};
use crate::report::Entry;

/// Seed used for the Peter–Weyl decomposition of quotients.
pub const PW_SEED: u64 = 0;

#[derive(Clone, Debug)]
pub struct CoidealSubalgebra {
    pub parent: FiniteHopfStar,
    pub space: Subspace,
    /// `A⁺ = A ∩ ker ε`
    pub plus: Subspace,
}

impl CoidealSubalgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coordinates of `a ∈ A` in the orthonormal basis of `A`.
    pub fn coords(&self, a: &Vector) -> Vector {
        self.space.basis().adjoint() * a
    }

    pub fn basis_vector(&self, k: usize) -> Vector {
        self.space.basis().column(k).into_owned()
    }
}

fn coideal_residuals(space: &Subspace, h: &FiniteHopfStar) -> Vec<(&'static str, f64)> {
    let basis = space.vectors();
    let dist = |v: &Vector| space.distance(v).unwrap_or(f64::INFINITY);
    let unit = dist(h.unit()) / h.unit().norm().max(1.0);
    let mut closed = 0.0f64;
    let mut star = 0.0f64;
    let mut coideal = 0.0f64;
    let perp = Matrix::identity(h.dim(), h.dim()) - space.projector();
    for a in &basis {
        star = star.max(dist(&h.star_of(a)));
        coideal = coideal.max(max_abs(&(&perp * h.comul(a))));
        let la = h.left(a);
        for b in &basis {
            closed = closed.max(dist(&(&la * b)));
        }
    }
    vec![
        ("contains_unit", unit),
        ("closed_under_product", closed),
        ("closed_under_star", star),
        ("right_coideal", coideal),
    ]
}

/// Check the four defining conditions and compute `A⁺`.
pub fn verify_coideal(space: &Subspace, h: &FiniteHopfStar) -> Result<CoidealSubalgebra> {
    if space.ambient() != h.dim() {
        return Err(Error::DimensionError {
            expected: h.dim(),
            found: space.ambient(),
        });
    }
    if space.dim() == 0 {
        return Err(invalid("the zero subspace is not a coideal subalgebra"));
    }
    let tol = h.tol() * 10.0;
    for (name, r) in coideal_residuals(space, h) {
        if !(r <= tol) {
            return Err(Error::NotCoideal {
                condition: name.to_string(),
                residual: r,
            });
        }
    }
    Ok(CoidealSubalgebra {
        parent: h.clone(),
        space: space.clone(),
        plus: plus_space(space, h)?,
    })
}

/// Report form of `verify_coideal`.
pub fn coideal_entry(space: &Subspace, h: &FiniteHopfStar) -> Entry {
    let tol = h.tol() * 10.0;
    let mut e = Entry::new("verify_coideal").detail("dim", space.dim());
    for (name, r) in coideal_residuals(space, h) {
        e = e.residual(name, r, tol);
    }
    e
}

fn plus_space(space: &Subspace, h: &FiniteHopfStar) -> Result<Subspace> {
    let b = space.basis();
    let row = h.counit().transpose() * b;
    let eps = Matrix::from_iterator(1, b.ncols(), row.iter().cloned());
    let ns = nullspace(&eps, h.tol())?;
    Ok(Subspace::from_columns(&(b * ns.basis()), h.tol()))
}

/// Smallest coideal *-subalgebra containing `gens` and `1`.
pub fn coideal_closure(gens: &[Vector], h: &FiniteHopfStar) -> Result<CoidealSubalgebra> {
    let d = h.dim();
    let tol = h.tol();
    let mut vecs = vec![h.unit().clone()];
    for g in gens {
        if g.len() != d {
            return Err(Error::DimensionError {
                expected: d,
                found: g.len(),
            });
        }
        vecs.push(g.clone());
    }
    let mut space = Subspace::span(d, &vecs, tol)?;
    loop {
        let basis = space.vectors();
        let mut more = basis.clone();
        for a in &basis {
            more.push(h.star_of(a));
            let da = h.comul(a);
            for k in 0..d {
                more.push(da.column(k).into_owned());
            }
            let la = h.left(a);
            for b in &basis {
                more.push(&la * b);
            }
        }
        let next = Subspace::span(d, &more, tol)?;
        if next.dim() == space.dim() {
            break;
        }
        space = next;
    }
    verify_coideal(&space, h)
}

/// `C = H/K` for a left ideal and coideal `K`, realized on a complement.
#[derive(Clone, Debug)]
pub struct QuotientCoalgebra {
    pub parent: FiniteHopfStar,
    pub kernel: Subspace,
    /// `π`, of shape `dim C × dim H`
    pub proj: Matrix,
    /// a linear section `σ` with `πσ = id`
    pub section: Matrix,
    pub coalg: StarCoalgebra,
    /// `action[i]` is the matrix of `c ↦ e_i · c`
    pub action: Vec<Matrix>,
    pub one_c: Vector,
    pub pw: Option<PeterWeylData>,
    pub validation: Entry,
}

impl QuotientCoalgebra {
    pub fn dim(&self) -> usize {
        self.proj.nrows()
    }

    pub fn project(&self, x: &Vector) -> Vector {
        &self.proj * x
    }

    pub fn peter_weyl(&self) -> Result<&PeterWeylData> {
        self.pw
            .as_ref()
            .ok_or_else(|| Error::NotCosemisimple("quotient coalgebra is not cosemisimple".into()))
    }

    /// Build from a kernel with the orthogonal complement as section.
    pub fn from_kernel(h: &FiniteHopfStar, kernel: Subspace) -> Result<Self> {
        let comp = kernel.complement();
        Self::with_section(h, kernel, comp.basis().clone())
    }

    /// Build from a kernel and any complement `W` (columns).
    pub fn with_section(h: &FiniteHopfStar, kernel: Subspace, w: Matrix) -> Result<Self> {
        let d = h.dim();
        let tol = h.tol();
        let m = w.ncols();
        if kernel.ambient() != d || w.nrows() != d || m + kernel.dim() != d {
            return Err(invalid("section does not complement the kernel"));
        }
        let mut full = Matrix::zeros(d, d);
        full.columns_mut(0, m).copy_from(&w);
        full.columns_mut(m, kernel.dim()).copy_from(kernel.basis());
        let inv = full
            .try_inverse()
            .ok_or_else(|| invalid("section is not transversal to the kernel"))?;
        let proj = inv.rows(0, m).into_owned();
        let section = w;

        let star_h = h.star_coalgebra_map();
        let conj_sec = section.map(|z| z.conj());
        let star_c = &proj * &star_h * &conj_sec;
        let mut rows = vec![Vec::new(); m];
        for (i, row) in rows.iter_mut().enumerate() {
            let delta = &proj * h.comul(&section.column(i).into_owned()) * proj.transpose();
            for j in 0..m {
                for k in 0..m {
                    let c = delta[(j, k)];
                    if c.norm() > 1e-14 {
                        row.push((j, k, c));
                    }
                }
            }
        }
        let counit = section.transpose() * h.counit();
        let coalg = StarCoalgebra::new(m, rows, counit, star_c, tol)?;
        let action = (0..d)
            .map(|i| &proj * h.lmul_basis(i) * &section)
            .collect();
        let one_c = &proj * h.unit();

        // kernel must be a left ideal, a coideal and stable under x ↦ (Sx)*
        let mut ideal = 0.0f64;
        let mut coideal = 0.0f64;
        let mut descent = 0.0f64;
        for k in kernel.vectors() {
            for i in 0..d {
                ideal = ideal.max(max_abs_vec(&(&proj * (h.lmul_basis(i) * &k))));
            }
            coideal = coideal.max(max_abs(&(&proj * h.comul(&k) * proj.transpose())));
            coideal = coideal.max(h.counit_of(&k).norm());
            descent = descent.max(max_abs_vec(
                &(&proj * (&star_h * k.map(|z| z.conj()))),
            ));
        }
        if !(descent <= tol * 10.0) {
            return Err(Error::StarDescentFailure(descent));
        }
        let pw = peter_weyl(&coalg, PW_SEED).ok();
        let laws = coalg.verify();
        let mut validation = Entry::new("quotient_coalgebra")
            .residual("left_ideal", ideal, tol * 10.0)
            .residual("coideal", coideal, tol * 10.0)
            .residual("star_descent", descent, tol * 10.0)
            .detail("dim", m)
            .detail("cosemisimple", pw.is_some())
            .require(pw.is_some());
        for (k, v) in &laws.residuals {
            validation = validation.residual(&format!("coalgebra_{k}"), *v, tol * 10.0);
        }
        if let Some(p) = &pw {
            validation = validation.detail("blocks", p.sizes());
        }
        Ok(Self {
            parent: h.clone(),
            kernel,
            proj,
            section,
            coalg,
            action,
            one_c,
            pw,
            validation,
        })
    }
}

/// `HA⁺ = span{e_i a}` for `a` in a basis of `A⁺`.
pub fn kernel_of(a: &CoidealSubalgebra) -> Subspace {
    let h = &a.parent;
    let mut vecs = Vec::new();
    for p in a.plus.vectors() {
        for i in 0..h.dim() {
            vecs.push(h.lmul_basis(i) * &p);
        }
    }
    Subspace::from_columns(&columns(h.dim(), &vecs), h.tol())
}

pub fn quotient_coalgebra(a: &CoidealSubalgebra) -> Result<QuotientCoalgebra> {
    QuotientCoalgebra::from_kernel(&a.parent, kernel_of(a))
}

/// `{x : (π⊗id)Δx = 1_C ⊗ x}`, computed as the common fixed space of
/// `x ↦ (f∘π)(x₁)x₂ − f(1_C)x` over the coordinate functionals `f` of `C`.
pub fn invariants(q: &QuotientCoalgebra) -> Result<Subspace> {
    let h = &q.parent;
    let d = h.dim();
    let m = q.dim();
    let mut stacked = Matrix::zeros(m * d, d);
    for f in 0..m {
        let g = q.proj.row(f).transpose();
        let f1 = q.one_c[f];
        // right convolution x ↦ g(x₁)x₂
        for i in 0..d {
            let col = h.comul(&h.basis(i)).transpose() * &g;
            for r in 0..d {
                let mut v = col[r];
                if r == i {
                    v -= f1;
                }
                stacked[(f * d + r, i)] = v;
            }
        }
    }
    let scale = max_abs(&q.proj).max(max_abs_vec(&q.one_c)).max(1.0);
    nullspace_scaled(&stacked, h.tol(), scale)
}

/// `A → C → ᶜH` must return `A`.
pub fn galois_roundtrip(a: &CoidealSubalgebra) -> Result<Entry> {
    let q = quotient_coalgebra(a)?;
    let inv = invariants(&q)?;
    let cmp = a.space.compare(&inv)?;
    let h = &a.parent;
    Ok(Entry::new("galois_roundtrip")
        .residual("subspace_equality", cmp.residual, h.tol())
        .require(cmp.equal)
        .detail("dim_A", a.dim())
        .detail("dim_C", q.dim())
        .detail("dim_invariants", inv.dim())
        .detail("dim_H", h.dim())
        .detail("freeness", a.dim() * q.dim() == h.dim()))
}

/// `C → ᶜH → H/H(ᶜH)⁺` must return the kernel of `C`.
pub fn galois_roundtrip_coalg(q: &QuotientCoalgebra) -> Result<Entry> {
    let h = &q.parent;
    let inv = invariants(q)?;
    let a = verify_coideal(&inv, h)?;
    let back = kernel_of(&a);
    let cmp = q.kernel.compare(&back)?;
    Ok(Entry::new("galois_roundtrip_coalg")
        .residual("kernel_equality", cmp.residual, h.tol())
        .require(cmp.equal)
        .detail("dim_C", q.dim())
        .detail("dim_invariants", a.dim()))
}

/// For `A₁ ⊆ A₂`, the kernels satisfy `HA₁⁺ ⊆ HA₂⁺`.
pub fn order_reversal(a1: &CoidealSubalgebra, a2: &CoidealSubalgebra) -> Result<Entry> {
    let tol = a1.parent.tol();
    let nested = a2.space.containment_residual(&a1.space)?;
    let k1 = kernel_of(a1);
    let k2 = kernel_of(a2);
    let rev = k2.containment_residual(&k1)?;
    Ok(Entry::new("order_reversal")
        .residual("coideal_inclusion", nested, tol)
        .residual("kernel_inclusion", rev, tol)
        .detail("dims", [a1.dim(), a2.dim()]))
}

/// The coideals `ℂ·1` and `H`.
pub fn trivial_coideals(h: &FiniteHopfStar) -> Result<(CoidealSubalgebra, CoidealSubalgebra)> {
    let scalars = verify_coideal(&Subspace::span(h.dim(), &[h.unit().clone()], h.tol())?, h)?;
    let whole = verify_coideal(&Subspace::full(h.dim(), h.tol()), h)?;
    Ok((scalars, whole))
}

#[cfg(test)]
pub(crate) fn zero_vec(n: usize) -> Vector {
    Vector::zeros(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{group_function_algebra, kac_paljutkin, GroupTable};
    use crate::numkernel::{basis_vector, random_vector, ONE};
    use rand::SeedableRng;

    fn s3_rotation_coideal() -> (GroupTable, CoidealSubalgebra) {
        let g = GroupTable::symmetric3();
        let h = group_function_algebra(&g).unwrap();
        let k = g.generated(&[g.index_of("(123)").unwrap()]);
        let mut vecs = Vec::new();
        for coset in g.right_cosets(&k) {
            let mut v = zero_vec(6);
            for x in coset {
                v[x] = ONE;
            }
            vecs.push(v);
        }
        let a = verify_coideal(&Subspace::span(6, &vecs, 1e-9).unwrap(), &h).unwrap();
        (g, a)
    }

    #[test]
    fn scalars_and_whole_algebra() {
        let h = kac_paljutkin().unwrap();
        let (c1, whole) = trivial_coideals(&h).unwrap();
        assert_eq!(c1.plus.dim(), 0);
        assert_eq!(whole.plus.dim(), 7);
        assert_eq!(quotient_coalgebra(&c1).unwrap().dim(), 8);
        assert_eq!(quotient_coalgebra(&whole).unwrap().dim(), 1);
        assert!(galois_roundtrip(&c1).unwrap().pass);
        assert!(galois_roundtrip(&whole).unwrap().pass);
    }

    #[test]
    fn rotation_coideal_of_s3() {
        let (_, a) = s3_rotation_coideal();
        assert_eq!(a.dim(), 2);
        let q = quotient_coalgebra(&a).unwrap();
        assert_eq!(q.dim(), 3);
        assert!(q.validation.pass, "{:?}", q.validation);
        assert_eq!(q.peter_weyl().unwrap().sizes(), vec![1, 1, 1]);
        let inv = invariants(&q).unwrap();
        assert!(a.space.compare(&inv).unwrap().equal);
        assert!(galois_roundtrip_coalg(&q).unwrap().pass);
    }

    #[test]
    fn closure_of_coset_indicator() {
        let (g, a) = s3_rotation_coideal();
        let h = group_function_algebra(&g).unwrap();
        let gen = a.basis_vector(0);
        let closed = coideal_closure(&[gen], &h).unwrap();
        assert!(closed.space.compare(&a.space).unwrap().equal);
        let empty = coideal_closure(&[], &h).unwrap();
        assert_eq!(empty.dim(), 1);
    }

    #[test]
    fn closure_of_delta_in_z2() {
        let h = group_function_algebra(&GroupTable::cyclic(2).unwrap()).unwrap();
        assert_eq!(coideal_closure(&[basis_vector(2, 0)], &h).unwrap().dim(), 2);
    }

    #[test]
    fn non_coideal_is_named() {
        let h = group_function_algebra(&GroupTable::symmetric3()).unwrap();
        // span{1, δ_e + δ_(12)} is a subalgebra only if it is closed; it is
        // not a coideal
        let mut v = zero_vec(6);
        v[0] = ONE;
        v[1] = ONE;
        let s = Subspace::span(6, &[h.unit().clone(), v], 1e-9).unwrap();
        assert!(matches!(verify_coideal(&s, &h), Err(Error::NotCoideal { .. })));
        assert!(verify_coideal(&Subspace::zero(6, 1e-9), &h).is_err());
    }

    #[test]
    fn quotient_is_section_independent() {
        let (_, a) = s3_rotation_coideal();
        let q1 = quotient_coalgebra(&a).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        // perturb the complement by kernel directions
        let kb = q1.kernel.basis().clone();
        let mut w = q1.section.clone();
        for j in 0..w.ncols() {
            let r = random_vector(&mut rng, kb.ncols());
            let col = w.column(j) + &kb * r;
            w.set_column(j, &col);
        }
        let q2 = QuotientCoalgebra::with_section(&a.parent, q1.kernel.clone(), w).unwrap();
        assert!(q2.validation.pass, "{:?}", q2.validation);
        let i1 = invariants(&q1).unwrap();
        let i2 = invariants(&q2).unwrap();
        assert!(i1.compare(&i2).unwrap().equal);
    }
}

//! Modules over a coideal subalgebra: flatness spot checks, the conjugate
//! flip between left and right modules, relative Hopf modules, the cotensor
//! product and the comparison map of the adjunction.

use super::{CoidealSubalgebra, QuotientCoalgebra};
use crate::error::{invalid, Error, Result};
use crate::hopfcore::{Comodule, FiniteHopfStar};
use crate::numkernel::{
    column_space_scaled, columns, max_abs, nullspace_scaled, rank, Matrix, Subspace, Tensor3, Vector,
};
use crate::report::Entry;

/// A left `A`-module; `act[k]` is the action of the `k`-th basis vector of `A`.
#[derive(Clone, Debug)]
pub struct LeftModule {
    pub dim: usize,
    pub act: Vec<Matrix>,
}

/// A right `A`-module; `m ◁ b_k = act[k] · m`.
#[derive(Clone, Debug)]
pub struct RightModule {
    pub dim: usize,
    pub act: Vec<Matrix>,
}

fn combine(a: &CoidealSubalgebra, act: &[Matrix], dim: usize, x: &Vector) -> Matrix {
    let coords = a.coords(x);
    let mut m = Matrix::zeros(dim, dim);
    for (k, c) in coords.iter().enumerate() {
        m += &act[k] * *c;
    }
    m
}

/// Matrix of right multiplication by `b` restricted to `A`, in `A` coordinates.
fn right_on_a(a: &CoidealSubalgebra, b: &Vector) -> Matrix {
    let basis = a.space.basis();
    basis.adjoint() * a.parent.right(b) * basis
}

fn left_on_a(a: &CoidealSubalgebra, b: &Vector) -> Matrix {
    let basis = a.space.basis();
    basis.adjoint() * a.parent.left(b) * basis
}

impl LeftModule {
    pub fn action(&self, a: &CoidealSubalgebra, x: &Vector) -> Matrix {
        combine(a, &self.act, self.dim, x)
    }

    pub fn zero(a: &CoidealSubalgebra) -> Self {
        Self {
            dim: 0,
            act: vec![Matrix::zeros(0, 0); a.dim()],
        }
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(a: &CoidealSubalgebra) -> Self {
        Self {
            dim: a.dim(),
            act: a.space.vectors().iter().map(|b| left_on_a(a, b)).collect(),
        }
    }

    /// `H` as a left `A`-module.
    pub fn parent(a: &CoidealSubalgebra) -> Self {
        Self {
            dim: a.parent.dim(),
            act: a.space.vectors().iter().map(|b| a.parent.left(b)).collect(),
        }
    }

    /// `A/A⁺ ≅ ℂ` with `a` acting by `ε(a)`.
    pub fn trivial(a: &CoidealSubalgebra) -> Self {
        Self {
            dim: 1,
            act: a
                .space
                .vectors()
                .iter()
                .map(|b| Matrix::from_element(1, 1, a.parent.counit_of(b)))
                .collect(),
        }
    }

    /// Restriction to an invariant subspace given by orthonormal columns.
    pub fn restrict(&self, sub: &Subspace) -> Self {
        let b = sub.basis();
        Self {
            dim: sub.dim(),
            act: self.act.iter().map(|m| b.adjoint() * m * b).collect(),
        }
    }

    pub fn direct_sum(&self, other: &LeftModule) -> Self {
        let n = self.dim + other.dim;
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(x, y)| {
                let mut m = Matrix::zeros(n, n);
                m.view_mut((0, 0), (self.dim, self.dim)).copy_from(x);
                m.view_mut((self.dim, self.dim), (other.dim, other.dim))
                    .copy_from(y);
                m
            })
            .collect();
        Self { dim: n, act }
    }

    /// Smallest submodule containing the given vectors.
    pub fn generated(&self, gens: &[Vector], tol: f64) -> Result<Subspace> {
        let mut space = Subspace::span(self.dim, gens, tol)?;
        loop {
            let mut vecs = space.vectors();
            for v in space.vectors() {
                for m in &self.act {
                    vecs.push(m * &v);
                }
            }
            let next = Subspace::span(self.dim, &vecs, tol)?;
            if next.dim() == space.dim() {
                return Ok(space);
            }
            space = next;
        }
    }

    /// Residual of `b_k·(b_l·m) = (b_k b_l)·m` and `1·m = m`.
    pub fn law_residual(&self, a: &CoidealSubalgebra) -> f64 {
        let h = &a.parent;
        let basis = a.space.vectors();
        let mut worst = max_abs(&(self.action(a, h.unit()) - Matrix::identity(self.dim, self.dim)));
        for (k, bk) in basis.iter().enumerate() {
            for (l, bl) in basis.iter().enumerate() {
                let prod = self.action(a, &h.mul(bk, bl));
                worst = worst.max(max_abs(&(&self.act[k] * &self.act[l] - prod)));
            }
        }
        worst
    }
}

impl RightModule {
    pub fn action(&self, a: &CoidealSubalgebra, x: &Vector) -> Matrix {
        combine(a, &self.act, self.dim, x)
    }

    /// Residual of `(m◁b_k)◁b_l = m◁(b_k b_l)` and `m◁1 = m`.
    pub fn law_residual(&self, a: &CoidealSubalgebra) -> f64 {
        let h = &a.parent;
        let basis = a.space.vectors();
        let mut worst = max_abs(&(self.action(a, h.unit()) - Matrix::identity(self.dim, self.dim)));
        for (k, bk) in basis.iter().enumerate() {
            for (l, bl) in basis.iter().enumerate() {
                let prod = self.action(a, &h.mul(bk, bl));
                worst = worst.max(max_abs(&(&self.act[l] * &self.act[k] - prod)));
            }
        }
        worst
    }
}

/// The conjugate space with `m ◁ a := a*·m`, in conjugated coordinates.
pub fn conjugate_flip(a: &CoidealSubalgebra, m: &LeftModule) -> RightModule {
    let h = &a.parent;
    RightModule {
        dim: m.dim,
        act: a
            .space
            .vectors()
            .iter()
            .map(|b| m.action(a, &h.star_of(b)).map(|z| z.conj()))
            .collect(),
    }
}

/// Inverse of `conjugate_flip`: `a·m := m ◁ a*`.
pub fn flip_right(a: &CoidealSubalgebra, m: &RightModule) -> LeftModule {
    let h = &a.parent;
    LeftModule {
        dim: m.dim,
        act: a
            .space
            .vectors()
            .iter()
            .map(|b| m.action(a, &h.star_of(b)).map(|z| z.conj()))
            .collect(),
    }
}

/// Relations `x b_k ⊗ m − x ⊗ b_k m` spanning the kernel of `H⊗M → H⊗_A M`,
/// in coordinates `i·n + j`.
fn left_relations(a: &CoidealSubalgebra, m: &LeftModule) -> Subspace {
    let h = &a.parent;
    let d = h.dim();
    let n = m.dim;
    let mut vecs = Vec::new();
    for (k, b) in a.space.vectors().iter().enumerate() {
        let rb = h.right(b);
        for i in 0..d {
            for j in 0..n {
                let mut v = Vector::zeros(d * n);
                for p in 0..d {
                    v[p * n + j] += rb[(p, i)];
                }
                for q in 0..n {
                    v[i * n + q] -= m.act[k][(q, j)];
                }
                vecs.push(v);
            }
        }
    }
    column_space_scaled(&columns(d * n, &vecs), h.tol(), relation_scale(a, &m.act))
}

/// Relations `m◁b_k ⊗ x − m ⊗ b_k x` for `M ⊗_A H`, coordinates `j·d + i`.
fn right_relations(a: &CoidealSubalgebra, m: &RightModule) -> Subspace {
    let h = &a.parent;
    let d = h.dim();
    let n = m.dim;
    let mut vecs = Vec::new();
    for (k, b) in a.space.vectors().iter().enumerate() {
        let lb = h.left(b);
        for j in 0..n {
            for i in 0..d {
                let mut v = Vector::zeros(n * d);
                for q in 0..n {
                    v[q * d + i] += m.act[k][(q, j)];
                }
                for p in 0..d {
                    v[j * d + p] -= lb[(p, i)];
                }
                vecs.push(v);
            }
        }
    }
    column_space_scaled(&columns(n * d, &vecs), h.tol(), relation_scale(a, &m.act))
}

/// Size of the terms whose differences make up the relations; relations
/// that cancel to noise at this scale are zero.
fn relation_scale(a: &CoidealSubalgebra, act: &[Matrix]) -> f64 {
    let h = &a.parent;
    let mult = a
        .space
        .vectors()
        .iter()
        .map(|b| max_abs(&h.left(b)).max(max_abs(&h.right(b))))
        .fold(0.0, f64::max);
    act.iter().map(max_abs).fold(mult, f64::max)
}

/// `dim H ⊗_A M`.
pub fn relative_tensor_dim(a: &CoidealSubalgebra, m: &LeftModule) -> usize {
    a.parent.dim() * m.dim - left_relations(a, m).dim()
}

/// Injectivity of the map induced on quotients by `big_map`, which sends
/// the source space into the target space.
fn induced_injective(
    big_map: &Matrix,
    src_rel: &Subspace,
    dst_rel: &Subspace,
    tol: f64,
) -> (bool, usize, usize, f64) {
    let src_dim = big_map.ncols() - src_rel.dim();
    let dst_dim = big_map.nrows() - dst_rel.dim();
    let comp = dst_rel.complement();
    let composite = comp.basis().adjoint() * big_map;
    let r = if composite.nrows() == 0 || composite.ncols() == 0 {
        0
    } else {
        rank(&composite, tol)
    };
    // relations must map into relations
    let mut leak = 0.0f64;
    for v in src_rel.vectors() {
        leak = leak.max(dst_rel.distance(&(big_map * v)).unwrap_or(f64::INFINITY));
    }
    (r == src_dim, src_dim, dst_dim, leak)
}

fn kron_identity_left(d: usize, f: &Matrix) -> Matrix {
    // (I_d ⊗ f) in coordinates i·n + j
    let (n, n1) = f.shape();
    let mut out = Matrix::zeros(d * n, d * n1);
    for i in 0..d {
        out.view_mut((i * n, i * n1), (n, n1)).copy_from(f);
    }
    out
}

fn kron_identity_right(f: &Matrix, d: usize) -> Matrix {
    // (f ⊗ I_d) in coordinates j·d + i
    let (n, n1) = f.shape();
    let mut out = Matrix::zeros(n * d, n1 * d);
    for j in 0..n {
        for q in 0..n1 {
            let c = f[(j, q)];
            for i in 0..d {
                out[(j * d + i, q * d + i)] = c;
            }
        }
    }
    out
}

/// Tensor an injective map of left `A`-modules with `H` on both sides and
/// check injectivity and faithfulness.
pub fn flatness_spotcheck(
    a: &CoidealSubalgebra,
    sub: &LeftModule,
    m: &LeftModule,
    f: &Matrix,
) -> Result<Entry> {
    let h = &a.parent;
    let tol = h.tol();
    let d = h.dim();
    if f.shape() != (m.dim, sub.dim) {
        return Err(invalid("module map has the wrong shape"));
    }
    if sub.dim > 0 && rank(f, tol) != sub.dim {
        return Err(invalid("module map is not injective"));
    }
    let mut linear = 0.0f64;
    for k in 0..a.dim() {
        linear = linear.max(max_abs(&(f * &sub.act[k] - &m.act[k] * f)));
    }
    if linear > tol * 10.0 {
        return Err(invalid(format!(
            "module map is not A-linear (residual {linear:.3e})"
        )));
    }
    let laws = sub.law_residual(a).max(m.law_residual(a));

    let (inj_l, src_l, dst_l, leak_l) = induced_injective(
        &kron_identity_left(d, f),
        &left_relations(a, sub),
        &left_relations(a, m),
        tol,
    );
    let rs = conjugate_flip(a, sub);
    let rm = conjugate_flip(a, m);
    let fbar = f.map(|z| z.conj());
    let (inj_r, src_r, dst_r, leak_r) = induced_injective(
        &kron_identity_right(&fbar, d),
        &right_relations(a, &rs),
        &right_relations(a, &rm),
        tol,
    );
    let flip_laws = rs.law_residual(a).max(rm.law_residual(a));
    let faithful_l = m.dim == 0 || dst_l > 0;
    let faithful_r = m.dim == 0 || dst_r > 0;
    Ok(Entry::new("flatness")
        .residual("module_laws", laws, tol * 10.0)
        .residual("flipped_module_laws", flip_laws, tol * 10.0)
        .residual("relations_preserved_left", leak_l, tol * 10.0)
        .residual("relations_preserved_right", leak_r, tol * 10.0)
        .require(inj_l && inj_r && faithful_l && faithful_r)
        .detail("injective_left", inj_l)
        .detail("injective_right", inj_r)
        .detail("faithful", faithful_l && faithful_r)
        .detail("dims_left", [src_l, dst_l])
        .detail("dims_right", [src_r, dst_r]))
}

/// A right `A`-module with a compatible right `H`-coaction.
#[derive(Clone, Debug)]
pub struct RelativeHopfModule {
    pub dim: usize,
    pub act: Vec<Matrix>,
    pub coaction: Comodule,
}

impl RelativeHopfModule {
    pub fn right_module(&self) -> RightModule {
        RightModule {
            dim: self.dim,
            act: self.act.clone(),
        }
    }

    /// Residual of `ρ(m◁a) = ρ(m)Δ(a)` over basis vectors.
    pub fn equivariance_residual(&self, a: &CoidealSubalgebra) -> f64 {
        let h = &a.parent;
        let basis = a.space.basis();
        let mut worst = 0.0f64;
        for (k, b) in a.space.vectors().iter().enumerate() {
            // Δb = Σ_l b_l ⊗ c_l
            let cb = basis.adjoint() * h.comul(b);
            let rights: Vec<Matrix> = (0..a.dim())
                .map(|l| h.right(&cb.row(l).transpose()).transpose())
                .collect();
            for i in 0..self.dim {
                let ei = crate::numkernel::basis_vector(self.dim, i);
                let lhs = self.coaction.coact(&(&self.act[k] * &ei));
                let r = self.coaction.coact(&ei);
                let mut rhs = Matrix::zeros(self.dim, h.dim());
                for (l, rt) in rights.iter().enumerate() {
                    rhs += &self.act[l] * &r * rt;
                }
                worst = worst.max(max_abs(&(lhs - rhs)));
            }
        }
        worst
    }
}

fn a_coaction(a: &CoidealSubalgebra) -> Tensor3 {
    let h = &a.parent;
    let basis = a.space.basis();
    let n = a.dim();
    let mut t = Tensor3::zeros(n, n, h.dim());
    for (i, b) in a.space.vectors().iter().enumerate() {
        let cb = basis.adjoint() * h.comul(b);
        for j in 0..n {
            for x in 0..h.dim() {
                t.set(i, j, x, cb[(j, x)]);
            }
        }
    }
    t
}

/// `M = A` with right multiplication and `ρ = Δ|_A`.
pub fn hopf_module_regular(a: &CoidealSubalgebra) -> RelativeHopfModule {
    RelativeHopfModule {
        dim: a.dim(),
        act: a.space.vectors().iter().map(|b| right_on_a(a, b)).collect(),
        coaction: Comodule::new(a_coaction(a)),
    }
}

/// `M = H` with right multiplication by `A` and `ρ = Δ`.
pub fn hopf_module_free(a: &CoidealSubalgebra) -> RelativeHopfModule {
    let h = &a.parent;
    let d = h.dim();
    let mut t = Tensor3::zeros(d, d, d);
    for (i, row) in h.coalgebra().comult_rows().iter().enumerate() {
        for &(j, k, c) in row {
            t.add(i, j, k, c);
        }
    }
    RelativeHopfModule {
        dim: d,
        act: a.space.vectors().iter().map(|b| h.right(b)).collect(),
        coaction: Comodule::new(t),
    }
}

/// `M = V ⊗ A` with `ρ(v⊗a) = v₀⊗a₁⊗v₁a₂`, coordinates `v·dim A + a`.
pub fn hopf_module_tensor(a: &CoidealSubalgebra, v: &Comodule) -> Result<RelativeHopfModule> {
    let h = &a.parent;
    let d = h.dim();
    if v.codim() != d {
        return Err(invalid("comodule is not over the parent Hopf algebra"));
    }
    let nv = v.dim;
    let na = a.dim();
    let n = nv * na;
    let act = a
        .space
        .vectors()
        .iter()
        .map(|b| {
            let r = right_on_a(a, b);
            let mut m = Matrix::zeros(n, n);
            for i in 0..nv {
                m.view_mut((i * na, i * na), (na, na)).copy_from(&r);
            }
            m
        })
        .collect();
    let ta = a_coaction(a);
    let mut t = Tensor3::zeros(n, n, d);
    for i in 0..nv {
        for j in 0..nv {
            let tji = Vector::from_fn(d, |c, _| v.coaction.get(i, j, c));
            if tji.norm() == 0.0 {
                continue;
            }
            let lt = h.left(&tji);
            for l in 0..na {
                for m in 0..na {
                    let c_lm = Vector::from_fn(d, |x, _| ta.get(l, m, x));
                    let prod = &lt * c_lm;
                    for x in 0..d {
                        t.add(i * na + l, j * na + m, x, prod[x]);
                    }
                }
            }
        }
    }
    Ok(RelativeHopfModule {
        dim: n,
        act,
        coaction: Comodule::new(t),
    })
}

/// Equalizer of `ρ⊗id` and `id⊗(π⊗id)Δ` inside `N⊗H` (coordinates
/// `i·dim H + x`) with its right `H`-coaction.
pub fn cotensor(n: &Comodule, q: &QuotientCoalgebra) -> Result<(Subspace, Comodule)> {
    let h = &q.parent;
    let d = h.dim();
    let m = q.dim();
    let nd = n.dim;
    if n.codim() != m {
        return Err(invalid("comodule is not over the quotient coalgebra"));
    }
    let mut diff = Matrix::zeros(nd * m * d, nd * d);
    let idx = |w: usize, c: usize, x: usize| (w * m + c) * d + x;
    for (i, w, c, v) in n.coaction.entries() {
        for x in 0..d {
            diff[(idx(w, c, x), i * d + x)] += v;
        }
    }
    for x in 0..d {
        let pd = &q.proj * h.comul(&h.basis(x));
        for i in 0..nd {
            for c in 0..m {
                for k in 0..d {
                    let v = pd[(c, k)];
                    if v.norm() != 0.0 {
                        diff[(idx(i, c, k), i * d + x)] -= v;
                    }
                }
            }
        }
    }
    let scale = max_abs(&q.proj)
        .max(n.coaction.max_abs())
        .max(1.0);
    let eq = nullspace_scaled(&diff, h.tol(), scale)?;
    let e = eq.dim();
    let mut t = Tensor3::zeros(e, e, d);
    let be = eq.basis();
    for z in 0..e {
        // (id⊗Δ) of the z-th basis vector, sliced by the last leg
        let mut ys = vec![Vector::zeros(nd * d); d];
        for i in 0..nd {
            for (x, row) in h.coalgebra().comult_rows().iter().enumerate() {
                let zc = be[(i * d + x, z)];
                if zc.norm() == 0.0 {
                    continue;
                }
                for &(j, k, c) in row {
                    ys[k][i * d + j] += zc * c;
                }
            }
        }
        for (k, y) in ys.iter().enumerate() {
            let coeffs = be.adjoint() * y;
            for w in 0..e {
                t.set(z, w, k, coeffs[w]);
            }
        }
    }
    Ok((eq, Comodule::new(t)))
}

/// `ℂ` with `ρ(1) = 1 ⊗ 1_C`.
pub fn trivial_quotient_comodule(q: &QuotientCoalgebra) -> Comodule {
    let mut t = Tensor3::zeros(1, 1, q.dim());
    for c in 0..q.dim() {
        t.set(0, 0, c, q.one_c[c]);
    }
    Comodule::new(t)
}

/// `C` coacting on itself by its comultiplication.
pub fn regular_quotient_comodule(q: &QuotientCoalgebra) -> Comodule {
    let m = q.dim();
    let mut t = Tensor3::zeros(m, m, m);
    for (i, row) in q.coalg.comult_rows().iter().enumerate() {
        for &(j, k, c) in row {
            t.add(i, j, k, c);
        }
    }
    Comodule::new(t)
}

/// `M → (M/MA⁺) □_C H`, `m ↦ [m₀]⊗m₁`, must be bijective.
pub fn adjunction_check(
    a: &CoidealSubalgebra,
    q: &QuotientCoalgebra,
    m: &RelativeHopfModule,
) -> Result<Entry> {
    let h = &a.parent;
    let tol = h.tol();
    let d = h.dim();
    let equiv = m.equivariance_residual(a);
    let laws = m.right_module().law_residual(a);
    let comod = m.coaction.verify(h.coalgebra())?;
    if equiv > tol * 10.0 || laws > tol * 10.0 || !comod.pass {
        return Err(Error::InvalidInput(format!(
            "module is not a relative Hopf module (equivariance {equiv:.3e}, module laws {laws:.3e})"
        )));
    }
    // M A⁺
    let mut gens = Vec::new();
    for p in a.plus.vectors() {
        let act = m.right_module().action(a, &p);
        for j in 0..m.dim {
            gens.push(act.column(j).into_owned());
        }
    }
    let ma = Subspace::from_columns(&columns(m.dim, &gens), tol);
    let comp = ma.complement();
    let pi_n = comp.basis().adjoint();
    let sec_n = comp.basis().clone();
    let nn = comp.dim();

    let mut t = Tensor3::zeros(nn, nn, q.dim());
    for i in 0..nn {
        let r = &pi_n * m.coaction.coact(&sec_n.column(i).into_owned()) * q.proj.transpose();
        for j in 0..nn {
            for c in 0..q.dim() {
                t.set(i, j, c, r[(j, c)]);
            }
        }
    }
    let mut descent = 0.0f64;
    for y in ma.vectors() {
        let r = &pi_n * m.coaction.coact(&y) * q.proj.transpose();
        descent = descent.max(max_abs(&r));
    }
    let n = Comodule::new(t);
    let n_laws = n.verify(&q.coalg)?;
    let (eq, _) = cotensor(&n, q)?;

    let mut phi = Matrix::zeros(nn * d, m.dim);
    for i in 0..m.dim {
        let r = &pi_n * m.coaction.coact(&crate::numkernel::basis_vector(m.dim, i));
        for j in 0..nn {
            for x in 0..d {
                phi[(j * d + x, i)] = r[(j, x)];
            }
        }
    }
    let mut outside = 0.0f64;
    for col in phi.column_iter() {
        outside = outside.max(eq.distance(&col.into_owned())?);
    }
    let r = if m.dim == 0 { 0 } else { rank(&phi, tol) };
    let bijective = r == m.dim && eq.dim() == m.dim;
    Ok(Entry::new("adjunction")
        .residual("equivariance", equiv, tol * 10.0)
        .residual("coaction_descends", descent, tol * 10.0)
        .residual("comparison_in_cotensor", outside, tol * 10.0)
        .residual(
            "quotient_comodule_laws",
            n_laws.residuals.values().fold(0.0, |a: f64, &b| a.max(b)),
            tol * 10.0,
        )
        .require(bijective)
        .detail("dim_M", m.dim)
        .detail("dim_N", nn)
        .detail("dim_cotensor", eq.dim())
        .detail("comparison_rank", r)
        .detail("bijective", bijective))
}

/// `H` as a left `A`-module restricted to the submodule generated by
/// seeded random vectors, grown until it reaches `target` dimensions.
pub fn random_submodule(
    a: &CoidealSubalgebra,
    target: usize,
    seed: u64,
) -> Result<(LeftModule, Matrix)> {
    use rand::SeedableRng;
    let h: &FiniteHopfStar = &a.parent;
    let whole = LeftModule::parent(a);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let goal = target.min(h.dim());
    let mut gens = Vec::new();
    loop {
        gens.push(crate::numkernel::random_vector(&mut rng, h.dim()));
        let sub = whole.generated(&gens, h.tol())?;
        if sub.dim() >= goal {
            return Ok((whole.restrict(&sub), sub.basis().clone()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coideal::{invariants, quotient_coalgebra, trivial_coideals, verify_coideal};
    use crate::corpus::{group_function_algebra, GroupTable};
    use crate::numkernel::ONE;

    fn s3_coideal(gen: &str) -> CoidealSubalgebra {
        let g = GroupTable::symmetric3();
        let h = group_function_algebra(&g).unwrap();
        let k = g.generated(&[g.index_of(gen).unwrap()]);
        let vecs: Vec<Vector> = g
            .right_cosets(&k)
            .into_iter()
            .map(|c| {
                let mut v = Vector::zeros(6);
                for x in c {
                    v[x] = ONE;
                }
                v
            })
            .collect();
        verify_coideal(&Subspace::span(6, &vecs, 1e-9).unwrap(), &h).unwrap()
    }

    #[test]
    fn cotensor_with_trivial_comodule_is_invariants() {
        let a = s3_coideal("(123)");
        let q = quotient_coalgebra(&a).unwrap();
        let (eq, comod) = cotensor(&trivial_quotient_comodule(&q), &q).unwrap();
        assert!(eq.compare(&invariants(&q).unwrap()).unwrap().equal);
        assert!(comod.verify(a.parent.coalgebra()).unwrap().pass);
    }

    #[test]
    fn cotensor_with_regular_quotient_recovers_h() {
        let a = s3_coideal("(12)");
        let q = quotient_coalgebra(&a).unwrap();
        let m = q.dim();
        let (eq, _) = cotensor(&regular_quotient_comodule(&q), &q).unwrap();
        assert_eq!(m, 2);
        assert_eq!(eq.dim(), m * a.dim());
        assert_eq!(eq.dim(), 6);
    }

    #[test]
    fn flatness_battery_on_rotation_coideal() {
        let a = s3_coideal("(123)");
        let reg = LeftModule::regular(&a);
        let plus = reg.restrict(&Subspace::from_columns(&(a.space.basis().adjoint() * a.plus.basis()), 1e-9));
        let incl = a.space.basis().adjoint() * a.plus.basis();
        let e = flatness_spotcheck(&a, &plus, &reg, &incl).unwrap();
        assert!(e.pass, "{e:?}");
        assert_eq!(e.details["dims_left"][1], 6);
        assert_eq!(relative_tensor_dim(&a, &LeftModule::trivial(&a)), 3);
        let zero = LeftModule::zero(&a);
        let e = flatness_spotcheck(&a, &zero, &reg, &Matrix::zeros(2, 0)).unwrap();
        assert!(e.pass);
    }

    #[test]
    fn flip_twice_is_identity() {
        let a = s3_coideal("(123)");
        let (m, _) = random_submodule(&a, 3, 1).unwrap();
        assert!(m.dim >= 3);
        let back = flip_right(&a, &conjugate_flip(&a, &m));
        for (x, y) in back.act.iter().zip(&m.act) {
            assert!(max_abs(&(x - y)) < 1e-12);
        }
        let r = conjugate_flip(&a, &LeftModule::regular(&a));
        assert!(r.law_residual(&a) < 1e-12);
    }

    #[test]
    fn adjunction_on_basic_modules() {
        let a = s3_coideal("(123)");
        let q = quotient_coalgebra(&a).unwrap();
        for m in [hopf_module_regular(&a), hopf_module_free(&a)] {
            let e = adjunction_check(&a, &q, &m).unwrap();
            assert!(e.pass, "{e:?}");
        }
        let (c1, _) = trivial_coideals(&a.parent).unwrap();
        let q1 = quotient_coalgebra(&c1).unwrap();
        assert!(adjunction_check(&c1, &q1, &hopf_module_free(&c1)).unwrap().pass);
    }

    #[test]
    fn scalars_give_plain_tensor_products() {
        let h = group_function_algebra(&GroupTable::symmetric3()).unwrap();
        let (c1, _) = trivial_coideals(&h).unwrap();
        assert_eq!(relative_tensor_dim(&c1, &LeftModule::trivial(&c1)), 6);
        assert_eq!(relative_tensor_dim(&c1, &LeftModule::regular(&c1)), 6);
        let (m, _) = random_submodule(&c1, 3, 0).unwrap();
        assert_eq!(relative_tensor_dim(&c1, &m), 6 * m.dim);
    }

    #[test]
    fn relations_span_every_generator_on_kac_paljutkin() {
        for (name, a) in crate::corpus::kac_paljutkin_coideals().unwrap() {
            let m = LeftModule::parent(&a);
            let rel = left_relations(&a, &m);
            let h = &a.parent;
            let (d, n) = (h.dim(), m.dim);
            for (k, b) in a.space.vectors().iter().enumerate() {
                let rb = h.right(b);
                for i in 0..d {
                    for j in 0..n {
                        let mut v = Vector::zeros(d * n);
                        for p in 0..d {
                            v[p * n + j] += rb[(p, i)];
                        }
                        for q in 0..n {
                            v[i * n + q] -= m.act[k][(q, j)];
                        }
                        assert!(rel.distance(&v).unwrap() < 1e-10, "{name}");
                    }
                }
            }
            // H ⊗_A H has dimension dim H · dim H / dim A for free H
            assert_eq!(d * n - rel.dim(), d * d / a.dim(), "{name}");
        }
    }
}

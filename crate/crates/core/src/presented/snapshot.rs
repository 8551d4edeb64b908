//! Finite subcoalgebras of a presented Hopf algebra, quotients by a coideal
//! computed inside a degree range, and the positivity test on them.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{Poly, PresentedHopf, Word};
use crate::cqgtools::{bi_invariant, coalgebra_integral, peter_weyl, PeterWeylData};
use crate::error::{Error, Result};
use crate::expectation::{descend_map, gram_positivity, theta_on, witness, ThetaFunctional};
use crate::hopfcore::StarCoalgebra;
use crate::numkernel::{
    columns, max_abs, max_abs_vec, nullspace, Matrix, Subspace, Vector, C64,
};
use crate::report::Entry;

/// Normal monomials used as coordinates.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl MonomialBasis {
    pub fn new(words: Vec<Word>) -> Self {
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        Self { words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index_of(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// Coordinates of a normal-form polynomial.
    pub fn coords(&self, p: &Poly) -> Result<Vector> {
        let mut v = Vector::zeros(self.len());
        for (w, c) in &p.terms {
            let i = self.index_of(w).ok_or_else(|| {
                Error::InternalError(format!("monomial {w:?} lies outside the snapshot"))
            })?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn poly(&self, v: &Vector) -> Poly {
        let mut p = Poly::zero();
        for (i, c) in v.iter().enumerate() {
            if c.norm() > 0.0 {
                p.add_term(self.words[i].clone(), *c);
            }
        }
        p.prune()
    }
}

/// A finite subcoalgebra; `basis` holds orthonormal columns in monomial
/// coordinates (unit vectors when the subcoalgebra is spanned by monomials).
#[derive(Clone, Debug)]
pub struct Snapshot {
    pub ambient: MonomialBasis,
    pub basis: Matrix,
    pub monomial: bool,
    pub coalg: StarCoalgebra,
    pub unit: Option<Vector>,
    pub guaranteed_degree: usize,
}

impl Snapshot {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    /// Coordinates of `p`, which must lie in the snapshot.
    pub fn coords(&self, p: &Poly) -> Result<Vector> {
        let v = self.ambient.coords(p)?;
        let c = self.basis.adjoint() * &v;
        let miss = max_abs_vec(&(&v - &self.basis * &c));
        if miss > self.coalg.tol() * v.norm().max(1.0) {
            return Err(Error::InternalError(format!(
                "element is not in the snapshot (residual {miss:.3e})"
            )));
        }
        Ok(c)
    }

    pub fn element(&self, c: &Vector) -> Poly {
        self.ambient.poly(&(&self.basis * c))
    }

    /// Monomial labels of the basis when it is monomial.
    pub fn labels(&self, p: &PresentedHopf) -> Vec<String> {
        (0..self.dim())
            .map(|i| {
                let col = self.basis.column(i).into_owned();
                p.format_poly(&self.ambient.poly(&col))
            })
            .collect()
    }

    /// Matrix of a linear map on polynomials restricted to the snapshot.
    pub fn matrix_of(&self, f: impl Fn(&Poly) -> Result<Poly>) -> Result<Matrix> {
        let mut m = Matrix::zeros(self.dim(), self.dim());
        for i in 0..self.dim() {
            let x = self.element(&crate::numkernel::basis_vector(self.dim(), i));
            m.set_column(i, &self.coords(&f(&x)?)?);
        }
        Ok(m)
    }
}

fn build_snapshot(
    p: &PresentedHopf,
    ambient: MonomialBasis,
    space: Subspace,
    seed_degree: usize,
) -> Result<Snapshot> {
    let tol = p.tol;
    let n = ambient.len();
    // prefer a monomial basis when the span allows it
    let support: Vec<usize> = (0..n)
        .filter(|&w| space.vectors().iter().any(|v| v[w].norm() > tol))
        .collect();
    let (basis, monomial) = if support.len() == space.dim() {
        let cols: Vec<Vector> = support
            .iter()
            .map(|&w| crate::numkernel::basis_vector(n, w))
            .collect();
        (columns(n, &cols), true)
    } else {
        (space.basis().clone(), false)
    };
    let dim = basis.ncols();
    let mut rows = vec![Vec::new(); dim];
    let mut counit = Vector::zeros(dim);
    let mut star = Matrix::zeros(dim, dim);
    for i in 0..dim {
        let x = ambient.poly(&basis.column(i).into_owned());
        let dx = p.delta_of(&x)?;
        let mut full = Matrix::zeros(n, n);
        for ((l, r), c) in &dx.terms {
            let (Some(a), Some(b)) = (ambient.index_of(l), ambient.index_of(r)) else {
                return Err(Error::InternalError(
                    "coproduct leaves the snapshot".into(),
                ));
            };
            full[(a, b)] += c;
        }
        let local = basis.adjoint() * &full * basis.map(|z| z.conj());
        let back = &basis * &local * basis.transpose();
        if max_abs(&(back - &full)) > tol * full.norm().max(1.0) {
            return Err(Error::InternalError(
                "snapshot is not closed under the coproduct".into(),
            ));
        }
        for j in 0..dim {
            for k in 0..dim {
                if local[(j, k)].norm() > 1e-14 {
                    rows[i].push((j, k, local[(j, k)]));
                }
            }
        }
        counit[i] = p.eps_of(&x);
        let sx = p.star_of(&p.antipode_of(&x)?)?;
        let v = ambient.coords(&sx)?;
        let c = basis.adjoint() * &v;
        if max_abs_vec(&(&v - &basis * &c)) > tol * v.norm().max(1.0) {
            return Err(Error::InternalError(
                "x -> S(x)* leaves the snapshot".into(),
            ));
        }
        star.set_column(i, &c);
    }
    let coalg = StarCoalgebra::new(dim, rows, counit, star, tol)?;
    let unit = ambient.coords(&Poly::one()).ok().and_then(|v| {
        let c = basis.adjoint() * &v;
        (max_abs_vec(&(&v - &basis * &c)) <= tol).then_some(c)
    });
    Ok(Snapshot {
        ambient,
        basis,
        monomial,
        coalg,
        unit,
        guaranteed_degree: p.cutoff.saturating_sub(seed_degree),
    })
}

/// Smallest subcoalgebra containing the seeds.
pub fn snapshot(p: &PresentedHopf, seeds: &[Poly]) -> Result<Snapshot> {
    let seeds: Vec<Poly> = seeds
        .iter()
        .map(|s| p.normal_form(s))
        .collect::<Result<_>>()?;
    let seed_degree = seeds.iter().map(|s| p.poly_degree(s)).max().unwrap_or(0);
    // every monomial reachable through coproduct legs
    let mut seen: HashSet<Word> = HashSet::new();
    let mut frontier: Vec<Word> = seeds.iter().flat_map(|s| s.terms.keys().cloned()).collect();
    while let Some(w) = frontier.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        let deg = p.degree(&w);
        if deg > p.cutoff {
            return Err(Error::CutoffExceeded {
                degree: deg,
                cutoff: p.cutoff,
            });
        }
        for (l, r) in p.delta_of(&Poly::monomial(w))?.terms.keys() {
            for x in [l, r] {
                if !seen.contains(x) {
                    frontier.push(x.clone());
                }
            }
        }
    }
    let mut words: Vec<Word> = seen.into_iter().collect();
    words.sort_by(|a, b| p.cmp_words(a, b));
    let ambient = MonomialBasis::new(words);
    let n = ambient.len();
    let seed_vecs: Vec<Vector> = seeds
        .iter()
        .map(|s| ambient.coords(s))
        .collect::<Result<_>>()?;
    let mut space = Subspace::span(n, &seed_vecs, p.tol)?;
    loop {
        let mut vecs = space.vectors();
        for v in space.vectors() {
            let x = ambient.poly(&v);
            let mut full = Matrix::zeros(n, n);
            for ((l, r), c) in &p.delta_of(&x)?.terms {
                let a = ambient.index_of(l).expect("closed support");
                let b = ambient.index_of(r).expect("closed support");
                full[(a, b)] += c;
            }
            for k in 0..n {
                vecs.push(full.column(k).into_owned());
                vecs.push(full.row(k).transpose());
            }
        }
        let next = Subspace::span(n, &vecs, p.tol)?;
        if next.dim() == space.dim() {
            break;
        }
        space = next;
    }
    build_snapshot(p, ambient, space, seed_degree)
}

/// The span of all normal monomials of degree ≤ `k`, which must be a
/// subcoalgebra.
pub fn filtration(p: &PresentedHopf, k: usize) -> Result<Snapshot> {
    if k > p.cutoff {
        return Err(Error::CutoffExceeded {
            degree: k,
            cutoff: p.cutoff,
        });
    }
    let ambient = MonomialBasis::new(p.normal_monomials(k));
    let n = ambient.len();
    let space = Subspace::full(n, p.tol);
    build_snapshot(p, ambient, space, k)
}

/// `A = span{products of generators}` inside the degree-`k` filtration.
fn coideal_span(p: &PresentedHopf, gens: &[Poly], k: usize, snap: &Snapshot) -> Result<Subspace> {
    let mut words = vec![Poly::one()];
    let mut frontier = vec![Poly::one()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            if p.poly_degree(&x) + p.poly_degree(g) > k {
                continue;
            }
            let y = p.mul(&x, g)?;
            words.push(y.clone());
            frontier.push(y);
        }
    }
    let vecs: Vec<Vector> = words
        .iter()
        .map(|w| snap.coords(w))
        .collect::<Result<_>>()?;
    Subspace::span(snap.dim(), &vecs, p.tol)
}

/// Coideal *-subalgebra conditions for the algebra generated by `gens`,
/// checked on its part of degree ≤ `k`.
pub fn truncated_coideal_entry(p: &PresentedHopf, gens: &[Poly], k: usize) -> Result<Entry> {
    let snap = filtration(p, k)?;
    let a = coideal_span(p, gens, k, &snap)?;
    let tol = p.tol * 10.0;
    let mut star = 0.0f64;
    let mut coideal = 0.0f64;
    for v in a.vectors() {
        let x = snap.element(&v);
        star = star.max(a.distance(&snap.coords(&p.star_of(&x)?)?)?);
        let dx = snap.coalg.comul(&v);
        for j in 0..snap.dim() {
            coideal = coideal.max(a.distance(&dx.column(j).into_owned())?);
        }
    }
    let unit = a.distance(&snap.coords(&Poly::one())?)?;
    Ok(Entry::new("truncated_coideal")
        .residual("contains_unit", unit, tol)
        .residual("closed_under_star", star, tol)
        .residual("right_coideal", coideal, tol)
        .detail("degree", k)
        .detail("dim", a.dim()))
}

/// `C = F_g / K_g` where `K_g` collects the combinations of `m·a⁰`
/// (`a⁰ = a − ε(a)`, `deg(m·a) ≤ d`) that land in degree ≤ `g = d − deg A`.
#[derive(Clone, Debug)]
pub struct TruncatedQuotient {
    pub snapshot: Snapshot,
    pub kernel: Subspace,
    pub proj: Matrix,
    pub section: Matrix,
    pub coalg: StarCoalgebra,
    pub one_c: Vector,
    pub pw: Option<PeterWeylData>,
    pub guaranteed_degree: usize,
    pub build_degree: usize,
    pub validation: Entry,
}

impl TruncatedQuotient {
    pub fn dim(&self) -> usize {
        self.coalg.dim()
    }

    pub fn peter_weyl(&self) -> Result<&PeterWeylData> {
        self.pw
            .as_ref()
            .ok_or_else(|| Error::NotCosemisimple("truncated quotient is not cosemisimple".into()))
    }
}

pub fn truncated_quotient(p: &PresentedHopf, gens: &[Poly], d: usize) -> Result<TruncatedQuotient> {
    if d > p.cutoff {
        return Err(Error::CutoffExceeded {
            degree: d,
            cutoff: p.cutoff,
        });
    }
    let gens: Vec<Poly> = gens
        .iter()
        .map(|g| p.normal_form(g))
        .collect::<Result<_>>()?;
    let gdeg = gens.iter().map(|g| p.poly_degree(g)).max().unwrap_or(0);
    if gdeg > d {
        return Err(Error::CutoffExceeded {
            degree: gdeg,
            cutoff: d,
        });
    }
    let g = d - gdeg;
    let big = MonomialBasis::new(p.normal_monomials(d));
    let mut kvecs = Vec::new();
    for a in &gens {
        let a0 = a.sub(&Poly::one().scaled(p.eps_of(a))).prune();
        let da = p.poly_degree(a);
        for m in p.normal_monomials(d - da) {
            let y = p.mul(&Poly::monomial(m), &a0)?;
            kvecs.push(big.coords(&y)?);
        }
    }
    let snap = filtration(p, g)?;
    let inner = snap.ambient.len();
    // K_g: combinations whose components above degree g cancel
    let kernel = if kvecs.is_empty() {
        Subspace::zero(inner, p.tol)
    } else {
        let km = columns(big.len(), &kvecs);
        let outer = km.rows(inner, big.len() - inner).into_owned();
        let combos = if outer.nrows() == 0 {
            Matrix::identity(km.ncols(), km.ncols())
        } else {
            nullspace(&outer, p.tol)?.basis().clone()
        };
        let inside = km.rows(0, inner) * combos;
        Subspace::from_columns(&inside, p.tol)
    };
    let comp = kernel.complement();
    let section = comp.basis().clone();
    let proj = section.adjoint();
    let m = section.ncols();

    let c = &snap.coalg;
    let mut rows = vec![Vec::new(); m];
    for (i, row) in rows.iter_mut().enumerate() {
        let delta = &proj * c.comul(&section.column(i).into_owned()) * proj.transpose();
        for j in 0..m {
            for k in 0..m {
                if delta[(j, k)].norm() > 1e-14 {
                    row.push((j, k, delta[(j, k)]));
                }
            }
        }
    }
    let counit = section.transpose() * c.counit();
    let star = &proj * c.star_matrix() * section.map(|z| z.conj());
    let coalg = StarCoalgebra::new(m, rows, counit, star, p.tol)?;
    let unit = snap
        .unit
        .clone()
        .ok_or_else(|| Error::InternalError("filtration does not contain 1".into()))?;
    let one_c = &proj * unit;

    let mut coideal = 0.0f64;
    let mut descent = 0.0f64;
    for k in kernel.vectors() {
        coideal = coideal.max(max_abs(&(&proj * c.comul(&k) * proj.transpose())));
        coideal = coideal.max(c.counit_of(&k).norm());
        descent = descent.max(max_abs_vec(
            &(&proj * (c.star_matrix() * k.map(|z| z.conj()))),
        ));
    }
    let tol = p.tol * 10.0;
    let pw = peter_weyl(&coalg, 0).ok();
    let mut validation = Entry::new("truncated_quotient")
        .residual("coideal", coideal, tol)
        .residual("star_descent", descent, tol)
        .detail("build_degree", d)
        .detail("guaranteed_degree", g)
        .detail("dim_snapshot", snap.dim())
        .detail("dim_kernel", kernel.dim())
        .detail("dim", m)
        .detail("cosemisimple", pw.is_some());
    for (name, r) in coalg.verify().residuals {
        validation = validation.residual(&format!("coalgebra_{name}"), r, tol);
    }
    if let Some(pw) = &pw {
        validation = validation.detail("blocks", pw.sizes());
    }
    Ok(TruncatedQuotient {
        snapshot: snap,
        kernel,
        proj,
        section,
        coalg,
        one_c,
        pw,
        guaranteed_degree: g,
        build_degree: d,
        validation,
    })
}

/// θ on a truncated quotient; `NotApplicable` when `S²` does not descend.
pub fn truncated_theta(p: &PresentedHopf, tq: &TruncatedQuotient) -> Result<ThetaFunctional> {
    let snap = &tq.snapshot;
    let s2 = snap.matrix_of(|x| p.antipode_of(&p.antipode_of(x)?))?;
    let s2c = descend_map(&tq.kernel, &tq.proj, &tq.section, &s2, p.tol)?;
    Ok(theta_on(tq.peter_weyl()?, &s2c, tq.dim()))
}

/// Everything computed by `decide_presented`, alongside its report entry.
#[derive(Clone, Debug, Serialize)]
pub struct PresentedVerdict {
    pub invariant: bool,
    pub defect_dim: usize,
    pub positive: bool,
    pub min_eigenvalue: f64,
    pub witness: Option<Vec<(String, [f64; 2])>>,
    pub witness_value: Option<f64>,
    pub build_degree: usize,
    pub guaranteed_degree: usize,
    pub gram_degree: usize,
    #[serde(skip)]
    pub entry: Entry,
}

/// Witness threshold for a genuinely negative value of `φ(x*x)`.
const WITNESS_THRESHOLD: f64 = -1e-6;

/// Tests `S²(A) = A ⇔ φ positive` on the truncated data: `φ = h_C∘π` on
/// `F_g`, its Gram matrix on `F_{⌊g/2⌋}` (so that every `x*y` stays inside
/// `F_g`), and `S²` on the degree-≤g part of `A`.
pub fn decide_presented(p: &PresentedHopf, gens: &[Poly], d: usize) -> Result<PresentedVerdict> {
    let tq = truncated_quotient(p, gens, d)?;
    let g = tq.guaranteed_degree;
    let gram_degree = g / 2;
    let snap = &tq.snapshot;
    let tol = p.tol;

    let pw = tq.peter_weyl()?;
    let (h_c, check) = coalgebra_integral(&tq.coalg, &tq.one_c, pw)?;
    let phi = tq.proj.transpose() * &h_c.coords;

    let small = p.normal_monomials(gram_degree);
    let n = small.len();
    let mut gram = Matrix::zeros(n, n);
    let mut stars = Vec::with_capacity(n);
    for w in &small {
        stars.push(p.star_of(&Poly::monomial(w.clone()))?);
    }
    let mut products = vec![Vec::with_capacity(n); n];
    for i in 0..n {
        for w in &small {
            let prod = p.mul(&stars[i], &Poly::monomial(w.clone()))?;
            products[i].push(snap.coords(&prod)?);
        }
    }
    let eval = |f: &Vector, x: &Vector| -> C64 { f.iter().zip(x.iter()).map(|(a, b)| a * b).sum() };
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = eval(&phi, &products[i][j]);
        }
    }
    let pos = gram_positivity(&gram, tol);

    let (haar, _) = bi_invariant(&snap.coalg, snap.unit.as_ref().expect("unit"))?;
    let mut hgram = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            hgram[(i, j)] = eval(&haar, &products[i][j]);
        }
    }

    let a = coideal_span(p, gens, g, snap)?;
    let s2 = snap.matrix_of(|x| p.antipode_of(&p.antipode_of(x)?))?;
    let (invariant, defect) = crate::expectation::subspace_s2_invariance(&a, &s2);

    let (witness_poly, witness_value) = if pos.positive {
        (None, None)
    } else {
        let x = witness(&pos, Some(&hgram));
        let value = (x.adjoint() * &gram * &x)[(0, 0)].re;
        let labelled: Vec<(String, [f64; 2])> = small
            .iter()
            .zip(x.iter())
            .filter(|(_, c)| c.norm() > 1e-12)
            .map(|(w, c)| (p.show(w), [c.re, c.im]))
            .collect();
        (Some(labelled), Some(value))
    };
    let has_witness = witness_value.is_some_and(|v| v <= WITNESS_THRESHOLD);
    // below the generators' degree the truncated A is too small to show S² moving it
    let gen_degree = gens.iter().map(|x| p.poly_degree(x)).max().unwrap_or(0);
    let sees_generators = gen_degree <= g;

    let mut entry = Entry::new("decide_expected")
        .residual("integral_invariance", check.invariance_residual, tol * 10.0)
        .value("min_eigenvalue", pos.min_eigenvalue)
        .value("hermitian_defect", pos.hermitian_defect)
        .eigenvalues(pos.eigenvalues.clone())
        .detail("invariant", invariant)
        .detail("defect_dim", defect)
        .detail("positive", pos.positive)
        .detail("degree_range", format!("gram on degree <= {gram_degree}, phi exact on degree <= {g}"))
        .detail("build_degree", d)
        .detail("guaranteed_degree", g)
        .detail("gram_degree", gram_degree)
        .detail("quotient_blocks", pw.sizes())
        .detail(
            "truncation_note",
            "only the Peter-Weyl blocks present in the snapshot enter phi",
        );
    if let (Some(w), Some(v)) = (&witness_poly, witness_value) {
        entry = entry.detail("witness", w).value("witness_value", v);
    }
    entry = match (invariant, pos.positive) {
        (true, _) if !sees_generators => entry
            .detail("verdict", "inconclusive at this cutoff")
            .detail("generator_degree", gen_degree)
            .inconclusive(),
        (true, true) => entry.detail("verdict", "invariant, positive"),
        (false, false) if has_witness => entry.detail("verdict", "non-invariant, non-positive"),
        (false, _) => entry
            .detail("verdict", "inconclusive at this cutoff")
            .inconclusive(),
        (true, false) => {
            let mut e = entry.detail("verdict", "invariant but not positive");
            e.fail();
            e
        }
    };
    Ok(PresentedVerdict {
        invariant,
        defect_dim: defect,
        positive: pos.positive,
        min_eigenvalue: pos.min_eigenvalue,
        witness: witness_poly,
        witness_value,
        build_degree: d,
        guaranteed_degree: g,
        gram_degree,
        entry,
    })
}

/// Retry an inconclusive verdict at higher degrees, two at a time, up to
/// `max_degree`. The presentation's cutoff is raised as needed.
pub fn decide_presented_escalating(
    p: &PresentedHopf,
    gens: &[Poly],
    start: usize,
    max_degree: usize,
) -> Result<PresentedVerdict> {
    let mut d = start;
    loop {
        let local = if p.cutoff < 2 * d { p.with_cutoff(2 * d)? } else { p.clone() };
        let mut v = decide_presented(&local, gens, d)?;
        let inconclusive = v.entry.outcome == crate::report::Outcome::Inconclusive;
        if !inconclusive || d + 2 > max_degree {
            if d != start {
                v.entry = v.entry.detail("escalated_from", start);
            }
            return Ok(v);
        }
        d += 2;
    }
}

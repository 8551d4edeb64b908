//! Hopf *-algebras given by generators and a terminating rewrite system,
//! computed up to a degree cutoff.
//!
//! Monomials are compared by weighted degree and then lexicographically
//! in the order the generators are listed. Every rule must rewrite its
//! left side into strictly smaller monomials; local confluence is checked on
//! all critical pairs within the cutoff when the presentation is built.

mod io;
mod snapshot;

pub use io::{from_json, load, save, to_json, GeneratorEntry, PolyTerm, PresentedFile, RuleEntry, TensorTerm};
pub use snapshot::{
    decide_presented, decide_presented_escalating, filtration, snapshot, truncated_coideal_entry,
    truncated_quotient, truncated_theta, MonomialBasis, PresentedVerdict, Snapshot,
    TruncatedQuotient,
};

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::error::{invalid, Error, Result};
use crate::numkernel::{C64, ONE, ZERO};
use crate::report::Entry;

/// A word in the generators, by index.
pub type Word = Vec<usize>;

/// Coefficients below this magnitude are dropped after rewriting.
const DROP: f64 = 1e-13;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly {
    pub terms: BTreeMap<Word, C64>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Vec::new())
    }

    pub fn monomial(w: Word) -> Self {
        Self::term(w, ONE)
    }

    pub fn term(w: Word, c: C64) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn add_term(&mut self, w: Word, c: C64) {
        let e = self.terms.entry(w).or_insert(ZERO);
        *e += c;
    }

    pub fn add_scaled(&mut self, other: &Poly, c: C64) {
        for (w, v) in &other.terms {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: C64) -> Poly {
        let mut p = Poly::zero();
        p.add_scaled(self, c);
        p
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_scaled(other, ONE);
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, -ONE);
        p
    }

    pub fn prune(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() > DROP);
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.norm()))
    }

    /// Coefficient of the empty word.
    pub fn constant(&self) -> C64 {
        self.terms.get(&Vec::new()).copied().unwrap_or(ZERO)
    }
}

/// `Σ c · left ⊗ right`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct TensorPoly {
    pub terms: BTreeMap<(Word, Word), C64>,
}

impl TensorPoly {
    pub fn add_term(&mut self, l: Word, r: Word, c: C64) {
        let e = self.terms.entry((l, r)).or_insert(ZERO);
        *e += c;
    }

    pub fn prune(mut self) -> Self {
        self.terms.retain(|_, c| c.norm() > DROP);
        self
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |a, c| a.max(c.norm()))
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        let mut t = self.clone();
        for (k, v) in &other.terms {
            t.add_term(k.0.clone(), k.1.clone(), -v);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Poly,
}

/// Structure maps on generators, extended multiplicatively (`Δ`, `ε`),
/// anti-multiplicatively (`S`) and conjugate-linearly anti-multiplicatively (`*`).
#[derive(Clone, Debug)]
pub struct PresentedHopf {
    pub generators: Vec<Generator>,
    pub rules: Vec<Rule>,
    pub delta: Vec<TensorPoly>,
    pub eps: Vec<C64>,
    pub antipode: Vec<Poly>,
    pub star: Vec<Poly>,
    pub cutoff: usize,
    pub params: BTreeMap<String, f64>,
    pub tol: f64,
    nf_cache: RefCell<HashMap<Word, Poly>>,
    delta_cache: RefCell<HashMap<Word, TensorPoly>>,
}

impl PresentedHopf {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        generators: Vec<Generator>,
        rules: Vec<Rule>,
        delta: Vec<TensorPoly>,
        eps: Vec<C64>,
        antipode: Vec<Poly>,
        star: Vec<Poly>,
        cutoff: usize,
        params: BTreeMap<String, f64>,
    ) -> Result<Self> {
        let n = generators.len();
        if n == 0 {
            return Err(invalid("a presentation needs at least one generator"));
        }
        if generators.iter().any(|g| g.degree == 0) {
            return Err(invalid("generator degrees must be positive"));
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(invalid(format!("duplicate generator `{}`", g.name)));
            }
        }
        if delta.len() != n || eps.len() != n || antipode.len() != n || star.len() != n {
            return Err(invalid(
                "delta, eps, antipode and star must each have one entry per generator",
            ));
        }
        let p = Self {
            generators,
            rules,
            delta,
            eps,
            antipode,
            star,
            cutoff,
            params,
            tol: crate::numkernel::DEFAULT_TOL,
            nf_cache: RefCell::new(HashMap::new()),
            delta_cache: RefCell::new(HashMap::new()),
        };
        p.check_words()?;
        for (k, r) in p.rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(invalid(format!("rule {k} has an empty left side")));
            }
            for w in r.rhs.terms.keys() {
                if p.cmp_words(w, &r.lhs) != Ordering::Less {
                    return Err(invalid(format!(
                        "rule {} -> ... is not decreasing: {} is not smaller",
                        p.show(&r.lhs),
                        p.show(w)
                    )));
                }
            }
        }
        p.check_confluence()?;
        Ok(p)
    }

    fn check_words(&self) -> Result<()> {
        let n = self.generators.len();
        let ok = |w: &Word| w.iter().all(|&g| g < n);
        let polys = self
            .rules
            .iter()
            .flat_map(|r| r.rhs.terms.keys().chain(std::iter::once(&r.lhs)))
            .chain(self.antipode.iter().flat_map(|p| p.terms.keys()))
            .chain(self.star.iter().flat_map(|p| p.terms.keys()));
        for w in polys {
            if !ok(w) {
                return Err(invalid("word refers to an unknown generator"));
            }
        }
        for t in &self.delta {
            for (l, r) in t.terms.keys() {
                if !ok(l) || !ok(r) {
                    return Err(invalid("coproduct refers to an unknown generator"));
                }
            }
        }
        Ok(())
    }

    pub fn with_cutoff(&self, cutoff: usize) -> Result<Self> {
        Self::new(
            self.generators.clone(),
            self.rules.clone(),
            self.delta.clone(),
            self.eps.clone(),
            self.antipode.clone(),
            self.star.clone(),
            cutoff,
            self.params.clone(),
        )
        .map(|p| p.with_tol(self.tol))
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, w: &[usize]) -> usize {
        w.iter().map(|&g| self.generators[g].degree).sum()
    }

    pub fn poly_degree(&self, p: &Poly) -> usize {
        p.terms.keys().map(|w| self.degree(w)).max().unwrap_or(0)
    }

    pub fn cmp_words(&self, a: &[usize], b: &[usize]) -> Ordering {
        self.degree(a).cmp(&self.degree(b)).then_with(|| a.cmp(b))
    }

    /// Human-readable word, generators separated by spaces when names are
    /// longer than one character.
    pub fn show(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let names: Vec<&str> = w.iter().map(|&g| self.generators[g].name.as_str()).collect();
        if names.iter().all(|n| n.chars().count() == 1) {
            names.concat()
        } else {
            names.join(" ")
        }
    }

    pub fn gen(&self, name: &str) -> Result<Poly> {
        self.generator_index(name)
            .map(|i| Poly::monomial(vec![i]))
            .ok_or_else(|| invalid(format!("unknown generator `{name}`")))
    }

    fn find_redex(&self, w: &[usize]) -> Option<(usize, usize)> {
        for i in 0..w.len() {
            for (k, r) in self.rules.iter().enumerate() {
                if w[i..].starts_with(&r.lhs) {
                    return Some((i, k));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &[usize]) -> bool {
        self.find_redex(w).is_none()
    }

    fn nf_word(&self, w: &[usize]) -> Result<Poly> {
        let deg = self.degree(w);
        if deg > self.cutoff {
            return Err(Error::CutoffExceeded {
                degree: deg,
                cutoff: self.cutoff,
            });
        }
        if let Some(p) = self.nf_cache.borrow().get(w) {
            return Ok(p.clone());
        }
        let out = match self.find_redex(w) {
            None => Poly::monomial(w.to_vec()),
            Some((i, k)) => {
                let r = &self.rules[k];
                let mut acc = Poly::zero();
                for (rw, c) in &r.rhs.terms {
                    let mut next = w[..i].to_vec();
                    next.extend_from_slice(rw);
                    next.extend_from_slice(&w[i + r.lhs.len()..]);
                    acc.add_scaled(&self.nf_word(&next)?, *c);
                }
                acc.prune()
            }
        };
        self.nf_cache.borrow_mut().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    /// The unique normal form; fails if a word is above the cutoff.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (w, c) in &p.terms {
            acc.add_scaled(&self.nf_word(w)?, *c);
        }
        Ok(acc.prune())
    }

    pub fn mul(&self, x: &Poly, y: &Poly) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (u, a) in &x.terms {
            for (v, b) in &y.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                acc.add_scaled(&self.nf_word(&w)?, a * b);
            }
        }
        Ok(acc.prune())
    }

    /// Critical pairs: overlaps and inclusions of left sides, within the cutoff.
    fn critical_pairs(&self) -> Vec<(Word, Poly, Poly)> {
        let mut out = Vec::new();
        for (i, r1) in self.rules.iter().enumerate() {
            for (j, r2) in self.rules.iter().enumerate() {
                let (l1, l2) = (&r1.lhs, &r2.lhs);
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let mut word = l1.clone();
                    word.extend_from_slice(&l2[k..]);
                    let mut a = Poly::zero();
                    for (w, c) in &r1.rhs.terms {
                        let mut x = w.clone();
                        x.extend_from_slice(&l2[k..]);
                        a.add_term(x, *c);
                    }
                    let mut b = Poly::zero();
                    for (w, c) in &r2.rhs.terms {
                        let mut x = l1[..l1.len() - k].to_vec();
                        x.extend_from_slice(w);
                        b.add_term(x, *c);
                    }
                    out.push((word, a, b));
                }
                if i != j && l2.len() <= l1.len() {
                    for p in 0..=l1.len() - l2.len() {
                        if l1[p..p + l2.len()] != l2[..] {
                            continue;
                        }
                        let a = r1.rhs.clone();
                        let mut b = Poly::zero();
                        for (w, c) in &r2.rhs.terms {
                            let mut x = l1[..p].to_vec();
                            x.extend_from_slice(w);
                            x.extend_from_slice(&l1[p + l2.len()..]);
                            b.add_term(x, *c);
                        }
                        out.push((l1.clone(), a, b));
                    }
                }
            }
        }
        out
    }

    /// Both resolutions of every critical pair within the cutoff must agree.
    pub fn check_confluence(&self) -> Result<usize> {
        let mut checked = 0;
        for (word, a, b) in self.critical_pairs() {
            if self.degree(&word) > self.cutoff {
                continue;
            }
            let na = self.normal_form(&a)?;
            let nb = self.normal_form(&b)?;
            let scale = na.max_abs().max(nb.max_abs()).max(1.0);
            if na.sub(&nb).prune().max_abs() > self.tol * scale {
                return Err(Error::NotConfluent(format!(
                    "{}: {} vs {}",
                    self.show(&word),
                    self.format_poly(&na),
                    self.format_poly(&nb)
                )));
            }
            checked += 1;
        }
        Ok(checked)
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        if p.terms.is_empty() {
            return "0".into();
        }
        p.terms
            .iter()
            .map(|(w, c)| format!("({:.4}{:+.4}i)·{}", c.re, c.im, self.show(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn eps_of(&self, p: &Poly) -> C64 {
        p.terms
            .iter()
            .map(|(w, c)| w.iter().fold(*c, |acc, &g| acc * self.eps[g]))
            .fold(ZERO, |a, b| a + b)
    }

    fn anti_extend(&self, p: &Poly, images: &[Poly], conjugate: bool) -> Result<Poly> {
        let mut acc = Poly::zero();
        for (w, c) in &p.terms {
            let mut t = Poly::one();
            for &g in w.iter().rev() {
                t = self.mul(&t, &images[g])?;
            }
            let c = if conjugate { c.conj() } else { *c };
            acc.add_scaled(&t, c);
        }
        Ok(acc.prune())
    }

    pub fn antipode_of(&self, p: &Poly) -> Result<Poly> {
        self.anti_extend(p, &self.antipode, false)
    }

    pub fn star_of(&self, p: &Poly) -> Result<Poly> {
        self.anti_extend(p, &self.star, true)
    }

    fn tensor_mul(&self, x: &TensorPoly, y: &TensorPoly) -> Result<TensorPoly> {
        let mut out = TensorPoly::default();
        for ((l1, r1), a) in &x.terms {
            for ((l2, r2), b) in &y.terms {
                let mut lw = l1.clone();
                lw.extend_from_slice(l2);
                let mut rw = r1.clone();
                rw.extend_from_slice(r2);
                let ln = self.nf_word(&lw)?;
                let rn = self.nf_word(&rw)?;
                for (u, c) in &ln.terms {
                    for (v, d) in &rn.terms {
                        out.add_term(u.clone(), v.clone(), a * b * c * d);
                    }
                }
            }
        }
        Ok(out.prune())
    }

    fn delta_word(&self, w: &[usize]) -> Result<TensorPoly> {
        if let Some(t) = self.delta_cache.borrow().get(w) {
            return Ok(t.clone());
        }
        let out = match w.split_last() {
            None => {
                let mut t = TensorPoly::default();
                t.add_term(Vec::new(), Vec::new(), ONE);
                t
            }
            Some((&g, rest)) => {
                let head = self.delta_word(rest)?;
                self.tensor_mul(&head, &self.delta[g])?
            }
        };
        self.delta_cache.borrow_mut().insert(w.to_vec(), out.clone());
        Ok(out)
    }

    pub fn delta_of(&self, p: &Poly) -> Result<TensorPoly> {
        let mut out = TensorPoly::default();
        for (w, c) in &p.terms {
            for ((l, r), v) in &self.delta_word(w)?.terms {
                out.add_term(l.clone(), r.clone(), c * v);
            }
        }
        Ok(out.prune())
    }

    /// Normal monomials of weighted degree ≤ `k`, sorted by the monomial order.
    pub fn normal_monomials(&self, k: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        let mut frontier = vec![Vec::new()];
        while let Some(w) = frontier.pop() {
            for g in 0..self.generators.len() {
                let mut x = w.clone();
                x.push(g);
                if self.degree(&x) > k {
                    continue;
                }
                let tail_reducible = self.rules.iter().any(|r| x.ends_with(&r.lhs));
                if !tail_reducible {
                    out.push(x.clone());
                    frontier.push(x);
                }
            }
        }
        out.sort_by(|a, b| self.cmp_words(a, b));
        out
    }

    /// All commutators of generators reduce to zero.
    pub fn is_commutative(&self) -> Result<bool> {
        let n = self.generators.len();
        for i in 0..n {
            for j in 0..n {
                let gi = Poly::monomial(vec![i]);
                let gj = Poly::monomial(vec![j]);
                let c = self.mul(&gi, &gj)?.sub(&self.mul(&gj, &gi)?).prune();
                if c.max_abs() > self.tol {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn apply_left(p: &PresentedHopf, t: &TensorPoly) -> Result<BTreeMap<(Word, Word, Word), C64>> {
    // (Δ⊗id)
    let mut out = BTreeMap::new();
    for ((l, r), c) in &t.terms {
        for ((a, b), v) in &p.delta_word(l)?.terms {
            *out.entry((a.clone(), b.clone(), r.clone())).or_insert(ZERO) += c * v;
        }
    }
    Ok(out)
}

fn apply_right(p: &PresentedHopf, t: &TensorPoly) -> Result<BTreeMap<(Word, Word, Word), C64>> {
    let mut out = BTreeMap::new();
    for ((l, r), c) in &t.terms {
        for ((a, b), v) in &p.delta_word(r)?.terms {
            *out.entry((l.clone(), a.clone(), b.clone())).or_insert(ZERO) += c * v;
        }
    }
    Ok(out)
}

fn triple_diff(
    a: &BTreeMap<(Word, Word, Word), C64>,
    b: &BTreeMap<(Word, Word, Word), C64>,
) -> f64 {
    let mut worst = 0.0f64;
    for (k, v) in a {
        worst = worst.max((v - b.get(k).copied().unwrap_or(ZERO)).norm());
    }
    for (k, v) in b {
        if !a.contains_key(k) {
            worst = worst.max(v.norm());
        }
    }
    worst
}

/// Hopf *-algebra laws on all normal monomials of degree ≤ `d`, plus
/// compatibility of the structure maps with every rule.
pub fn verify_laws(p: &PresentedHopf, d: usize) -> Result<Entry> {
    if d > p.cutoff {
        return Err(Error::CutoffExceeded {
            degree: d,
            cutoff: p.cutoff,
        });
    }
    let pairs = p.check_confluence()?;
    let mut rel = [0.0f64; 4];
    for r in &p.rules {
        let lhs = Poly::monomial(r.lhs.clone());
        rel[0] = rel[0].max(p.delta_of(&lhs)?.sub(&p.delta_of(&r.rhs)?).prune().max_abs());
        rel[1] = rel[1].max((p.eps_of(&lhs) - p.eps_of(&r.rhs)).norm());
        rel[2] = rel[2].max(
            p.antipode_of(&lhs)?
                .sub(&p.antipode_of(&r.rhs)?)
                .prune()
                .max_abs(),
        );
        rel[3] = rel[3].max(p.star_of(&lhs)?.sub(&p.star_of(&r.rhs)?).prune().max_abs());
    }

    let mut coassoc = 0.0f64;
    let mut counit = 0.0f64;
    let mut antipode = 0.0f64;
    let mut star_inv = 0.0f64;
    let mut star_comult = 0.0f64;
    let mut counit_star = 0.0f64;
    let monos = p.normal_monomials(d);
    for m in &monos {
        let x = Poly::monomial(m.clone());
        let dx = p.delta_of(&x)?;
        coassoc = coassoc.max(triple_diff(&apply_left(p, &dx)?, &apply_right(p, &dx)?));

        let mut left = Poly::zero();
        let mut right = Poly::zero();
        let mut s_left = Poly::zero();
        let mut s_right = Poly::zero();
        for ((l, r), c) in &dx.terms {
            let lp = Poly::monomial(l.clone());
            let rp = Poly::monomial(r.clone());
            left.add_scaled(&rp, c * p.eps_of(&lp));
            right.add_scaled(&lp, c * p.eps_of(&rp));
            s_left.add_scaled(&p.mul(&p.antipode_of(&lp)?, &rp)?, *c);
            s_right.add_scaled(&p.mul(&lp, &p.antipode_of(&rp)?)?, *c);
        }
        counit = counit
            .max(left.sub(&x).prune().max_abs())
            .max(right.sub(&x).prune().max_abs());
        let target = Poly::one().scaled(p.eps_of(&x));
        antipode = antipode
            .max(s_left.sub(&target).prune().max_abs())
            .max(s_right.sub(&target).prune().max_abs());

        let xs = p.star_of(&x)?;
        star_inv = star_inv.max(p.star_of(&xs)?.sub(&x).prune().max_abs());
        let lhs = p.delta_of(&xs)?;
        let mut rhs = TensorPoly::default();
        for ((l, r), c) in &dx.terms {
            let ls = p.star_of(&Poly::monomial(l.clone()))?;
            let rs = p.star_of(&Poly::monomial(r.clone()))?;
            for (u, a) in &ls.terms {
                for (v, b) in &rs.terms {
                    rhs.add_term(u.clone(), v.clone(), c.conj() * a * b);
                }
            }
        }
        star_comult = star_comult.max(lhs.sub(&rhs).prune().max_abs());
        counit_star = counit_star.max((p.eps_of(&xs) - p.eps_of(&x).conj()).norm());
    }
    let tol = p.tol;
    Ok(Entry::new("presented_laws")
        .residual("relations_comult", rel[0], tol)
        .residual("relations_counit", rel[1], tol)
        .residual("relations_antipode", rel[2], tol)
        .residual("relations_star", rel[3], tol)
        .residual("coassociativity", coassoc, tol)
        .residual("counit", counit, tol)
        .residual("antipode", antipode, tol)
        .residual("star_involution", star_inv, tol)
        .residual("comult_star", star_comult, tol)
        .residual("counit_star", counit_star, tol)
        .detail("degree", d)
        .detail("cutoff", p.cutoff)
        .detail("monomials", monos.len())
        .detail("critical_pairs", pairs))
}

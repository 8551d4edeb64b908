//! Algebraic identities on random elements of the built-in examples.

use std::sync::OnceLock;

use hopfstar::coideal::CoidealSubalgebra;
use hopfstar::corpus::{
    group_algebra, group_function_algebra, kac_paljutkin, kac_paljutkin_coideals, subgroup_coideal,
    suq2, GroupTable,
};
use hopfstar::cqgtools::haar_state;
use hopfstar::expectation::{build_expectation, plancherel_check, Expectation};
use hopfstar::hopfcore::FiniteHopfStar;
use hopfstar::numkernel::{c64, max_abs, max_abs_vec, Vector, C64};
use hopfstar::presented::{Poly, PresentedHopf};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn algebras() -> &'static Vec<FiniteHopfStar> {
    static CELL: OnceLock<Vec<FiniteHopfStar>> = OnceLock::new();
    CELL.get_or_init(|| {
        let s3 = GroupTable::symmetric3();
        vec![
            group_function_algebra(&s3).unwrap(),
            group_algebra(&s3).unwrap(),
            group_function_algebra(&GroupTable::dihedral4()).unwrap(),
            group_algebra(&GroupTable::cyclic(4).unwrap()).unwrap(),
            kac_paljutkin().unwrap(),
        ]
    })
}

fn expectations() -> &'static Vec<Expectation> {
    static CELL: OnceLock<Vec<Expectation>> = OnceLock::new();
    CELL.get_or_init(|| {
        let s3 = GroupTable::symmetric3();
        let d4 = GroupTable::dihedral4();
        let mut coideals: Vec<CoidealSubalgebra> = vec![
            subgroup_coideal(&s3, &s3.generated(&[s3.index_of("(123)").unwrap()])).unwrap(),
            subgroup_coideal(&s3, &s3.generated(&[s3.index_of("(12)").unwrap()])).unwrap(),
        ];
        coideals.extend(d4.subgroups().iter().map(|k| subgroup_coideal(&d4, k).unwrap()));
        coideals.extend(kac_paljutkin_coideals().unwrap().into_iter().map(|(_, a)| a));
        coideals.iter().map(|a| build_expectation(a).unwrap()).collect()
    })
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n)
}

fn vector(c: &[(f64, f64)], n: usize) -> Vector {
    Vector::from_iterator(n, c.iter().take(n).map(|&(a, b)| c64(a, b)))
}

/// `m(S ⊗ id)Δx`.
fn antipode_convolution(h: &FiniteHopfStar, x: &Vector) -> Vector {
    let cx = h.comul(x);
    let mut out = Vector::zeros(h.dim());
    for i in 0..h.dim() {
        let si = h.apply_antipode(&h.basis(i));
        for j in 0..h.dim() {
            if cx[(i, j)] != C64::new(0.0, 0.0) {
                out += h.mul(&si, &h.basis(j)) * cx[(i, j)];
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hopf_identities_hold_on_random_elements(k in 0usize..5, cx in coeffs(8), cy in coeffs(8)) {
        let h = &algebras()[k];
        let n = h.dim();
        let (x, y) = (vector(&cx, n), vector(&cy, n));
        let xy = h.mul(&x, &y);

        let delta = h.comul(&xy) - h.mul2(&h.comul(&x), &h.comul(&y));
        prop_assert!(max_abs(&delta) < TOL);
        prop_assert!((h.counit_of(&xy) - h.counit_of(&x) * h.counit_of(&y)).norm() < TOL);

        let s = h.apply_antipode(&xy) - h.mul(&h.apply_antipode(&y), &h.apply_antipode(&x));
        prop_assert!(max_abs_vec(&s) < TOL);
        let star = h.star_of(&xy) - h.mul(&h.star_of(&y), &h.star_of(&x));
        prop_assert!(max_abs_vec(&star) < TOL);
        prop_assert!(max_abs_vec(&(h.star_of(&h.star_of(&x)) - &x)) < TOL);

        let conv = antipode_convolution(h, &x) - h.unit() * h.counit_of(&x);
        prop_assert!(max_abs_vec(&conv) < TOL);
    }

    #[test]
    fn expectation_is_a_conditional_expectation(k in 0usize..18, cx in coeffs(8), ca in coeffs(8)) {
        let all = expectations();
        let e = &all[k % all.len()];
        let h = e.parent();
        let n = h.dim();
        let x = vector(&cx, n);
        let basis = e.coideal.space.basis();
        let a: Vector = basis * vector(&ca, basis.ncols());

        prop_assert!(max_abs_vec(&(e.apply(&a) - &a)) < TOL);
        let ex = e.apply(&x);
        prop_assert!(max_abs_vec(&(e.apply(&ex) - &ex)) < TOL);
        prop_assert!(e.coideal.space.distance(&ex).unwrap() < TOL * (1.0 + x.norm()));
        let right = e.apply(&h.mul(&x, &a)) - h.mul(&ex, &a);
        prop_assert!(max_abs_vec(&right) < TOL);
        let adj = e.apply(&h.star_of(&x)) - h.star_of(&ex);
        prop_assert!(max_abs_vec(&adj) < TOL);

        let haar = haar_state(h).unwrap();
        prop_assert!((haar.functional.eval(&ex) - haar.functional.eval(&x)).norm() < TOL);
    }

    #[test]
    fn plancherel_identity_on_random_pairs(k in 0usize..18, cx in coeffs(8), cy in coeffs(8)) {
        let all = expectations();
        let e = &all[k % all.len()];
        let n = e.parent().dim();
        let r = plancherel_check(&vector(&cx, n), &vector(&cy, n), e).unwrap();
        prop_assert!(r < 1e-8, "residual {r:e}");
    }
}

thread_local! {
    // the rewriting caches are not shareable across threads
    static SUQ2_HALF: PresentedHopf = suq2(0.5, 9).unwrap();
}

fn word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..4, 0..=3)
}

fn close(p: &Poly, q: &Poly) -> bool {
    p.sub(q).max_abs() < TOL
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rewriting_respects_the_structure_maps(u in word(), v in word(), w in word()) {
        SUQ2_HALF.with(|p| check_structure_maps(p, u, v, w))?;
    }
}

fn check_structure_maps(
    p: &PresentedHopf,
    u: Vec<usize>,
    v: Vec<usize>,
    w: Vec<usize>,
) -> Result<(), TestCaseError> {
    let (x, y, z) = (
        p.normal_form(&Poly::monomial(u)).unwrap(),
        p.normal_form(&Poly::monomial(v)).unwrap(),
        p.normal_form(&Poly::monomial(w)).unwrap(),
    );
    let xy = p.mul(&x, &y).unwrap();
    let left = p.mul(&xy, &z).unwrap();
    let right = p.mul(&x, &p.mul(&y, &z).unwrap()).unwrap();
    prop_assert!(close(&left, &right));

    prop_assert!((p.eps_of(&xy) - p.eps_of(&x) * p.eps_of(&y)).norm() < TOL);
    let star = p.mul(&p.star_of(&y).unwrap(), &p.star_of(&x).unwrap()).unwrap();
    prop_assert!(close(&p.star_of(&xy).unwrap(), &star));
    let anti = p.mul(&p.antipode_of(&y).unwrap(), &p.antipode_of(&x).unwrap()).unwrap();
    prop_assert!(close(&p.antipode_of(&xy).unwrap(), &anti));
    Ok(())
}

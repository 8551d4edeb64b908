use std::collections::BTreeMap;

use crate::error::{invalid, Error, Result};
use crate::numkernel::{c64, re, C64, ONE, ZERO};
use crate::presented::{
    truncated_coideal_entry, verify_laws, Generator, Poly, PresentedHopf, Rule, TensorPoly,
};

// generator order fixes the monomial order: b < c < a < d
const B: usize = 0;
const C: usize = 1;
const A: usize = 2;
const D: usize = 3;

/// 𝒪(SU_q(2)) with `u = [[a, b], [c, d]]` and `Δu_ij = Σ u_ik ⊗ u_kj`.
/// The structure maps are checked on every normal monomial of degree
/// ≤ `cutoff / 2` before the presentation is returned.
pub fn suq2(q: f64, cutoff: usize) -> Result<PresentedHopf> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(invalid(format!("q must lie in (0, 1], got {q}")));
    }
    let qc = re(q);
    let qi = re(1.0 / q);
    let mono = |w: &[usize]| Poly::monomial(w.to_vec());
    let term = |w: &[usize], c: C64| Poly::term(w.to_vec(), c);
    let rule = |lhs: [usize; 2], rhs: Poly| Rule {
        lhs: lhs.to_vec(),
        rhs,
    };
    let rules = vec![
        rule([A, B], term(&[B, A], qc)),
        rule([A, C], term(&[C, A], qc)),
        rule([C, B], mono(&[B, C])),
        rule([D, B], term(&[B, D], qi)),
        rule([D, C], term(&[C, D], qi)),
        rule([A, D], Poly::one().add(&term(&[B, C], qc))),
        rule([D, A], Poly::one().add(&term(&[B, C], qi))),
    ];
    let u = [[A, B], [C, D]];
    let mut delta = vec![TensorPoly::default(); 4];
    for i in 0..2 {
        for j in 0..2 {
            for (k, row) in u.iter().enumerate() {
                delta[u[i][j]].add_term(vec![u[i][k]], vec![row[j]], ONE);
            }
        }
    }
    let mut eps = vec![ZERO; 4];
    eps[A] = ONE;
    eps[D] = ONE;
    let mut antipode = vec![Poly::zero(); 4];
    antipode[A] = mono(&[D]);
    antipode[B] = term(&[B], -qi);
    antipode[C] = term(&[C], -qc);
    antipode[D] = mono(&[A]);
    let mut star = vec![Poly::zero(); 4];
    star[A] = mono(&[D]);
    star[B] = term(&[C], -qc);
    star[C] = term(&[B], -qi);
    star[D] = mono(&[A]);
    let generators = ["b", "c", "a", "d"]
        .iter()
        .map(|n| Generator {
            name: n.to_string(),
            degree: 1,
        })
        .collect();
    let params = BTreeMap::from([("q".to_string(), q)]);
    let p = PresentedHopf::new(generators, rules, delta, eps, antipode, star, cutoff, params)?;
    let laws = verify_laws(&p, cutoff / 2)?;
    if !laws.pass {
        return Err(Error::ConstructionFailure(format!(
            "SU_q(2) presentation fails its laws: {:?}",
            laws.residuals
        )));
    }
    Ok(p)
}

fn param_q(p: &PresentedHopf) -> Result<f64> {
    p.params
        .get("q")
        .copied()
        .ok_or_else(|| invalid("presentation has no parameter `q`"))
}

/// The family of Podleś sphere generators `x, y, z` with parameter `t`;
/// `t = 0` is the standard sphere.
fn podles(p: &PresentedHopf, t: C64) -> Result<Vec<Poly>> {
    let q = param_q(p)?;
    let g = |n: &str| p.gen(n);
    let (a, b, c, d) = (g("a")?, g("b")?, g("c")?, g("d")?);
    let m = |x: &Poly, y: &Poly| p.mul(x, y);
    let qq = re(1.0 + q.powi(-2));
    let tb = t.conj() * re(q);
    let mut x = m(&a, &a)?.scaled(t);
    x.add_scaled(&m(&a, &c)?, ONE);
    x.add_scaled(&m(&c, &c)?, -tb);
    let mut y = m(&a, &b)?.scaled(t * qq);
    y.add_scaled(&m(&a, &d)?, ONE);
    y.add_scaled(&m(&b, &c)?, re(1.0 / q));
    y.add_scaled(&m(&c, &d)?, -tb * qq);
    let mut z = m(&b, &b)?.scaled(t);
    z.add_scaled(&m(&b, &d)?, ONE);
    z.add_scaled(&m(&d, &d)?, -tb);
    let gens: Vec<Poly> = [x, y, z]
        .into_iter()
        .map(|x| p.normal_form(&x.prune()))
        .collect::<Result<_>>()?;
    let degree = 4.min(p.cutoff);
    let check = truncated_coideal_entry(p, &gens, degree)?;
    if !check.pass {
        return Err(Error::ConstructionFailure(format!(
            "Podleś generators fail the coideal conditions up to degree {degree}: {:?}",
            check.residuals
        )));
    }
    Ok(gens)
}

/// Generators of the standard Podleś sphere (the `T`-invariant functions).
pub fn podles_standard(p: &PresentedHopf) -> Result<Vec<Poly>> {
    podles(p, ZERO)
}

/// Generators of a non-standard Podleś sphere, `t ≠ 0` real.
pub fn podles_nonstandard(p: &PresentedHopf, t: f64) -> Result<Vec<Poly>> {
    if t == 0.0 {
        return Err(invalid("the non-standard family needs t != 0"));
    }
    podles(p, c64(t, 0.0))
}

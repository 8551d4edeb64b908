use super::{group_function_algebra, kac_paljutkin, GroupTable};
use crate::coideal::{coideal_closure, trivial_coideals, verify_coideal, CoidealSubalgebra};
use crate::error::{invalid, Result};
use crate::numkernel::{basis_vector, Subspace, Vector, ONE};

/// Functions constant on right cosets: `A = {f : f(kx) = f(x), k ∈ K}`.
pub fn subgroup_coideal(g: &GroupTable, k: &[usize]) -> Result<CoidealSubalgebra> {
    if !g.is_subgroup(k) {
        return Err(invalid(format!("{k:?} is not a subgroup")));
    }
    let h = group_function_algebra(g)?;
    let n = g.order();
    let vecs: Vec<Vector> = g
        .right_cosets(k)
        .into_iter()
        .map(|coset| {
            let mut v = Vector::zeros(n);
            for x in coset {
                v[x] = ONE;
            }
            v
        })
        .collect();
    verify_coideal(&Subspace::span(n, &vecs, h.tol())?, &h)
}

/// Name for the coideal of a subgroup, from its elements.
pub fn subgroup_name(g: &GroupTable, k: &[usize]) -> String {
    if k.len() == 1 {
        return "trivial-subgroup".into();
    }
    if k.len() == g.order() {
        return "whole-group".into();
    }
    let names: Vec<&str> = k.iter().map(|&x| g.names[x].as_str()).collect();
    format!("subgroup-{}", names.join("-"))
}

/// Coideal *-subalgebras of the Kac–Paljutkin algebra generated by the
/// listed elements, with `ℂ·1` and the whole algebra; duplicates removed.
pub fn kac_paljutkin_coideals() -> Result<Vec<(String, CoidealSubalgebra)>> {
    let kp = kac_paljutkin()?;
    let e = |i: usize| basis_vector(8, i);
    let seeds: Vec<(&str, Vec<Vector>)> = vec![
        ("group-like-sum", vec![e(0) + e(1) + e(2) + e(3)]),
        ("e1-e2", vec![e(0) + e(1)]),
        ("e1-e3", vec![e(0) + e(2)]),
        ("e1-e4", vec![e(0) + e(3)]),
        ("e2", vec![e(1)]),
    ];
    let (scalars, whole) = trivial_coideals(&kp)?;
    let mut out = vec![("scalars".to_string(), scalars)];
    for (name, gens) in seeds {
        let a = coideal_closure(&gens, &kp)?;
        let dup = out
            .iter()
            .any(|(_, b)| b.space.compare(&a.space).map(|c| c.equal).unwrap_or(false));
        if !dup {
            out.push((name.to_string(), a));
        }
    }
    if !out
        .iter()
        .any(|(_, b)| b.space.compare(&whole.space).map(|c| c.equal).unwrap_or(false))
    {
        out.push(("whole".to_string(), whole));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_coideal_dimensions() {
        let s3 = GroupTable::symmetric3();
        for k in s3.subgroups() {
            let a = subgroup_coideal(&s3, &k).unwrap();
            assert_eq!(a.dim() * k.len(), 6);
        }
        let x = (0..6).find(|&x| s3.mul[x][x] != s3.identity && x != s3.identity).unwrap();
        assert!(subgroup_coideal(&s3, &[s3.identity, x]).is_err());
    }

    #[test]
    fn kac_paljutkin_list_is_distinct() {
        let list = kac_paljutkin_coideals().unwrap();
        assert!(list.len() >= 4, "{}", list.len());
        let dims: Vec<usize> = list.iter().map(|(_, a)| a.dim()).collect();
        assert_eq!(dims[0], 1);
        assert!(dims.contains(&8));
    }
}

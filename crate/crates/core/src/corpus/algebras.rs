use super::GroupTable;
use crate::error::{Error, Result};
use crate::hopfcore::{verify_hopf, FiniteHopfStar, HopfData};
use crate::numkernel::{basis_vector, c64, re, Matrix, Tensor3, Vector, C64, DEFAULT_TOL, ONE};

fn checked(data: HopfData) -> Result<FiniteHopfStar> {
    let h = FiniteHopfStar::new(data)?;
    let report = verify_hopf(&h);
    if !report.pass {
        return Err(Error::ConstructionFailure(format!(
            "builder output fails the Hopf laws: {:?}",
            report.residuals
        )));
    }
    Ok(h)
}

/// Functions on a finite group in the delta basis.
pub fn group_function_algebra(g: &GroupTable) -> Result<FiniteHopfStar> {
    let n = g.order();
    let mut mult = Tensor3::zeros(n, n, n);
    let mut comult = Tensor3::zeros(n, n, n);
    let mut antipode = Matrix::zeros(n, n);
    for x in 0..n {
        mult.set(x, x, x, ONE);
        antipode[(g.inv[x], x)] = ONE;
        for y in 0..n {
            comult.add(g.mul[x][y], x, y, ONE);
        }
    }
    checked(HopfData {
        labels: g.names.iter().map(|s| format!("d{s}")).collect(),
        mult,
        unit: Vector::from_element(n, ONE),
        comult,
        counit: basis_vector(n, g.identity),
        antipode,
        star: Matrix::identity(n, n),
        tol: DEFAULT_TOL,
    })
}

/// The group algebra with group-like basis.
pub fn group_algebra(g: &GroupTable) -> Result<FiniteHopfStar> {
    let n = g.order();
    let mut mult = Tensor3::zeros(n, n, n);
    let mut comult = Tensor3::zeros(n, n, n);
    let mut inversion = Matrix::zeros(n, n);
    for x in 0..n {
        comult.set(x, x, x, ONE);
        inversion[(g.inv[x], x)] = ONE;
        for y in 0..n {
            mult.set(x, y, g.mul[x][y], ONE);
        }
    }
    checked(HopfData {
        labels: g.names.clone(),
        mult,
        unit: basis_vector(n, g.identity),
        comult,
        counit: Vector::from_element(n, ONE),
        antipode: inversion.clone(),
        star: inversion,
        tol: DEFAULT_TOL,
    })
}

/// The 8-dimensional Kac–Paljutkin quantum group `C⁴ ⊕ M₂`, basis
/// `e1..e4, E11, E12, E21, E22`.
pub fn kac_paljutkin() -> Result<FiniteHopfStar> {
    const E: [usize; 4] = [0, 1, 2, 3];
    const fn m(i: usize, j: usize) -> usize {
        4 + 2 * i + j
    }
    let d = 8;
    let i = c64(0.0, 1.0);
    let half = re(0.5);

    let mut mult = Tensor3::zeros(d, d, d);
    for &e in &E {
        mult.set(e, e, e, ONE);
    }
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                mult.set(m(a, b), m(b, c), m(a, c), ONE);
            }
        }
    }

    let mut comult = Tensor3::zeros(d, d, d);
    let mut put = |x: usize, terms: &[(usize, usize, C64)]| {
        for &(a, b, c) in terms {
            comult.add(x, a, b, c);
        }
    };
    let (e1, e2, e3, e4) = (E[0], E[1], E[2], E[3]);
    let (m11, m12, m21, m22) = (m(0, 0), m(0, 1), m(1, 0), m(1, 1));
    put(
        e1,
        &[
            (e1, e1, ONE),
            (e2, e2, ONE),
            (e3, e3, ONE),
            (e4, e4, ONE),
            (m11, m11, half),
            (m12, m12, half),
            (m21, m21, half),
            (m22, m22, half),
        ],
    );
    put(
        e2,
        &[
            (e1, e2, ONE),
            (e2, e1, ONE),
            (e3, e4, ONE),
            (e4, e3, ONE),
            (m11, m22, half),
            (m22, m11, half),
            (m21, m12, i * half),
            (m12, m21, -i * half),
        ],
    );
    put(
        e3,
        &[
            (e1, e3, ONE),
            (e3, e1, ONE),
            (e2, e4, ONE),
            (e4, e2, ONE),
            (m11, m22, half),
            (m22, m11, half),
            (m21, m12, -i * half),
            (m12, m21, i * half),
        ],
    );
    put(
        e4,
        &[
            (e1, e4, ONE),
            (e4, e1, ONE),
            (e2, e3, ONE),
            (e3, e2, ONE),
            (m11, m11, half),
            (m22, m22, half),
            (m12, m12, -half),
            (m21, m21, -half),
        ],
    );
    put(
        m11,
        &[
            (e1, m11, ONE),
            (m11, e1, ONE),
            (e2, m22, ONE),
            (m22, e2, ONE),
            (e3, m22, ONE),
            (m22, e3, ONE),
            (e4, m11, ONE),
            (m11, e4, ONE),
        ],
    );
    put(
        m12,
        &[
            (e1, m12, ONE),
            (m12, e1, ONE),
            (e2, m21, i),
            (m21, e2, -i),
            (e3, m21, -i),
            (m21, e3, i),
            (e4, m12, -ONE),
            (m12, e4, -ONE),
        ],
    );
    put(
        m21,
        &[
            (e1, m21, ONE),
            (m21, e1, ONE),
            (e2, m12, -i),
            (m12, e2, i),
            (e3, m12, i),
            (m12, e3, -i),
            (e4, m21, -ONE),
            (m21, e4, -ONE),
        ],
    );
    put(
        m22,
        &[
            (e1, m22, ONE),
            (m22, e1, ONE),
            (e2, m11, ONE),
            (m11, e2, ONE),
            (e3, m11, ONE),
            (m11, e3, ONE),
            (e4, m22, ONE),
            (m22, e4, ONE),
        ],
    );

    let mut unit = Vector::zeros(d);
    for x in [e1, e2, e3, e4, m11, m22] {
        unit[x] = ONE;
    }
    let mut antipode = Matrix::identity(d, d);
    antipode[(m12, m12)] = re(0.0);
    antipode[(m21, m21)] = re(0.0);
    antipode[(m21, m12)] = ONE;
    antipode[(m12, m21)] = ONE;
    // E_ij* = E_ji, which is the same swap
    let star = antipode.clone();

    checked(HopfData {
        labels: ["e1", "e2", "e3", "e4", "E11", "E12", "E21", "E22"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        mult,
        unit,
        comult,
        counit: basis_vector(d, e1),
        antipode,
        star,
        tol: DEFAULT_TOL,
    })
}

/// Sweedler's 4-dimensional Hopf algebra `⟨g, x | g² = 1, x² = 0, xg = −gx⟩`
/// with `g* = g`, `x* = x`; basis `1, g, x, gx`. Not cosemisimple.
pub fn sweedler() -> Result<FiniteHopfStar> {
    let d = 4;
    // basis index of g^a x^b is a + 2b
    let idx = |a: usize, b: usize| a + 2 * b;
    let mut mult = Tensor3::zeros(d, d, d);
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for e in 0..2 {
                    if b + e >= 2 {
                        continue;
                    }
                    let sign = if b * c == 1 { -ONE } else { ONE };
                    mult.set(idx(a, b), idx(c, e), idx((a + c) % 2, b + e), sign);
                }
            }
        }
    }
    let mut comult = Tensor3::zeros(d, d, d);
    comult.set(0, 0, 0, ONE);
    comult.set(1, 1, 1, ONE);
    comult.set(2, 2, 0, ONE);
    comult.set(2, 1, 2, ONE);
    comult.set(3, 3, 1, ONE);
    comult.set(3, 0, 3, ONE);
    let mut counit = Vector::zeros(d);
    counit[0] = ONE;
    counit[1] = ONE;
    let mut antipode = Matrix::zeros(d, d);
    antipode[(0, 0)] = ONE;
    antipode[(1, 1)] = ONE;
    antipode[(3, 2)] = -ONE;
    antipode[(2, 3)] = ONE;
    let mut star = Matrix::identity(d, d);
    star[(3, 3)] = -ONE;
    checked(HopfData {
        labels: ["1", "g", "x", "gx"].iter().map(|s| s.to_string()).collect(),
        mult,
        unit: basis_vector(d, 0),
        comult,
        counit,
        antipode,
        star,
        tol: DEFAULT_TOL,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopfcore::dual_hopf;

    #[test]
    fn group_algebras_pass() {
        for g in [
            GroupTable::cyclic(2).unwrap(),
            GroupTable::cyclic(3).unwrap(),
            GroupTable::cyclic(4).unwrap(),
            GroupTable::symmetric3(),
            GroupTable::dihedral4(),
        ] {
            let f = group_function_algebra(&g).unwrap();
            let a = group_algebra(&g).unwrap();
            assert!(verify_hopf(&f).pass);
            assert!(verify_hopf(&a).pass);
            assert!(f.is_commutative());
            assert!(a.is_cocommutative());
        }
    }

    #[test]
    fn kac_paljutkin_is_genuinely_quantum() {
        let kp = kac_paljutkin().unwrap();
        assert!(!kp.is_commutative());
        assert!(!kp.is_cocommutative());
        let s2 = kp.antipode_square();
        assert!((s2 - Matrix::identity(8, 8)).norm() < 1e-15);
    }

    #[test]
    fn sweedler_satisfies_the_laws() {
        assert!(verify_hopf(&sweedler().unwrap()).pass);
    }

    #[test]
    fn dual_of_group_functions_is_group_algebra() {
        let g = GroupTable::symmetric3();
        let dual = dual_hopf(&group_function_algebra(&g).unwrap()).unwrap();
        let alg = group_algebra(&g).unwrap();
        assert_eq!(dual.data().mult, alg.data().mult);
        assert_eq!(dual.data().comult, alg.data().comult);
        assert!((dual.star_matrix() - alg.star_matrix()).norm() < 1e-15);
        assert!((dual.antipode() - alg.antipode()).norm() < 1e-15);
    }

    #[test]
    fn star_coalgebra_map_inverts_group_elements() {
        // δ_g ↦ (S δ_g)* = δ_{g⁻¹}, while group-likes g ↦ (g⁻¹)* = g
        let h = group_function_algebra(&GroupTable::cyclic(3).unwrap()).unwrap();
        let m = h.star_coalgebra_map();
        assert_eq!(m[(2, 1)], ONE);
        assert_eq!(m[(1, 2)], ONE);
        let g = group_algebra(&GroupTable::cyclic(3).unwrap()).unwrap();
        assert!((g.star_coalgebra_map() - Matrix::identity(3, 3)).norm() < 1e-15);
    }
}

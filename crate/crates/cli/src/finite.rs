//! Commands on fixtures with a `hopf.json`.

use std::path::Path;

use hopfstar::coideal::{
    adjunction_check, coideal_closure, coideal_entry, cotensor, flatness_spotcheck,
    galois_roundtrip, galois_roundtrip_coalg, hopf_module_free, hopf_module_regular,
    hopf_module_tensor, invariants, order_reversal, quotient_coalgebra, random_submodule,
    regular_quotient_comodule, relative_tensor_dim, trivial_quotient_comodule,
    CoidealSubalgebra, LeftModule, QuotientCoalgebra,
};
use hopfstar::corpus::{sha256_hex, CoidealFile};
use hopfstar::cqgtools::{haar_state, is_cqg, peter_weyl, simple_comodules};
use hopfstar::expectation::{
    build_expectation, complete_positivity_check, decide_expected, fourier, fourier_matrix,
    plancherel_random, positivity_check, theta,
};
use hopfstar::hopfcore::io::vector_to_pairs;
use hopfstar::hopfcore::{verify_hopf, FiniteHopfStar};
use hopfstar::numkernel::{c64, max_abs_vec, rank, Matrix, Subspace, Vector};
use hopfstar::report::Entry;
use hopfstar::{Error, Result};

use crate::{guard, Command, Options};

type Coideals = [(String, CoidealSubalgebra)];

/// Tolerance for the Plancherel identity on random pairs.
const PLANCHEREL_TOL: f64 = 1e-8;

pub(crate) fn run(
    cmd: &Command,
    h: &FiniteHopfStar,
    coideals: &Coideals,
    input: &Path,
    opts: &Options,
) -> Result<Vec<Entry>> {
    let per = |check: &str, f: &dyn Fn(&CoidealSubalgebra) -> Result<Vec<Entry>>| -> Result<Vec<Entry>> {
        let mut out = Vec::new();
        for (name, a) in coideals {
            match f(a) {
                Ok(entries) => {
                    for e in entries {
                        out.push(guard(check, Some(name), Ok(e))?);
                    }
                }
                Err(e) => out.push(guard(check, Some(name), Err(e))?),
            }
        }
        Ok(out)
    };
    match cmd {
        Command::Verify { .. } => {
            let mut out = vec![verify_hopf(h), is_cqg(h)];
            for (name, a) in coideals {
                out.push(coideal_entry(&a.space, h).detail("coideal", name));
            }
            Ok(out)
        }
        Command::Haar { .. } => Ok(vec![guard("haar", None, haar_entry(h))?]),
        Command::Peterweyl { .. } => Ok(vec![guard("peter_weyl", None, pw_entry(h, opts.seed))?]),
        Command::CoidealClose { gens, save, .. } => {
            Ok(vec![close(h, gens, save.as_deref(), input)?])
        }
        Command::Quotient { .. } => per("quotient", &|a| {
            let q = quotient_coalgebra(a)?;
            let blocks = q.peter_weyl()?.sizes();
            Ok(vec![q
                .validation
                .clone()
                .detail("dim_A", a.dim())
                .detail("blocks", blocks)
                .detail("dim_A_times_dim_C", a.dim() * q.dim())])
        }),
        Command::Invariants { .. } => per("invariants", &|a| {
            let q = quotient_coalgebra(a)?;
            let inv = invariants(&q)?;
            let cmp = a.space.compare(&inv)?;
            Ok(vec![Entry::new("invariants")
                .residual("equals_coideal", cmp.residual, h.tol())
                .require(cmp.equal)
                .detail("dim_invariants", inv.dim())
                .detail("dim_A", a.dim())])
        }),
        Command::Galois { .. } => {
            let mut out = per("galois_roundtrip", &|a| {
                let mut e = galois_roundtrip(a)?;
                let q = quotient_coalgebra(a)?;
                let back = galois_roundtrip_coalg(&q)?;
                absorb(&mut e, back, "coalgebra_side");
                Ok(vec![e])
            })?;
            // order reversal on every strictly nested pair
            for (n1, a1) in coideals {
                for (n2, a2) in coideals {
                    if a1.dim() >= a2.dim() || !a2.space.contains_subspace(&a1.space)? {
                        continue;
                    }
                    let e = guard("order_reversal", None, order_reversal(a1, a2))?;
                    out.push(e.detail("pair", [n1, n2]));
                }
            }
            Ok(out)
        }
        Command::Expectation { .. } => per("expectation", &|a| {
            let e = build_expectation(a)?;
            Ok(vec![e.validation.clone()])
        }),
        Command::Positivity { .. } => {
            let haar = haar_state(h)?;
            per("positivity", &|a| {
                let e = build_expectation(a)?;
                let p = positivity_check(h, &e.phi);
                let pos = Entry::new("positivity")
                    .require(p.positive)
                    .value("min_eigenvalue", p.min_eigenvalue)
                    .value("hermitian_defect", p.hermitian_defect)
                    .eigenvalues(p.eigenvalues.clone())
                    .detail("positive", p.positive);
                Ok(vec![pos, complete_positivity_check(&e, &haar)?])
            })
        }
        Command::DecideExpected { .. } => per("decide_expected", &|a| Ok(vec![decide_expected(a)?])),
        Command::Fourier { .. } => per("fourier", &|a| Ok(vec![fourier_entry(a)?])),
        Command::Plancherel { pairs, .. } => per("plancherel", &|a| {
            let e = build_expectation(a)?;
            let worst = plancherel_random(&e, *pairs, opts.seed)?;
            Ok(vec![Entry::new("plancherel")
                .residual("max_abs_difference", worst, PLANCHEREL_TOL.max(h.tol()))
                .detail("pairs", *pairs)
                .detail("seed", opts.seed)])
        }),
        Command::Cotensor { .. } => per("cotensor", &|a| {
            let q = quotient_coalgebra(a)?;
            Ok(vec![cotensor_entry(&q)?])
        }),
        Command::Adjunction { .. } => per("adjunction", &|a| adjunction_battery(a)),
        Command::Flatness { .. } => per("flatness", &|a| flatness_battery(a, opts.seed)),
        Command::Corpus { .. } => unreachable!("handled before loading"),
    }
}

/// Merge `other` into `e`, prefixing its residuals and details.
pub(crate) fn absorb(e: &mut Entry, other: Entry, prefix: &str) {
    for (k, v) in other.residuals {
        e.residuals.insert(format!("{prefix}.{k}"), v);
    }
    for (k, v) in other.details {
        e.details.insert(format!("{prefix}.{k}"), v);
    }
    if !other.pass {
        e.fail();
    }
}

fn haar_entry(h: &FiniteHopfStar) -> Result<Entry> {
    let hs = haar_state(h)?;
    Ok(Entry::new("haar")
        .residual("bi_invariance", hs.residual, h.tol())
        .value("min_gram_eigenvalue", hs.min_eigenvalue)
        .eigenvalues(hs.eigenvalues.clone())
        .require(hs.faithful)
        .detail("faithful", hs.faithful)
        .detail("functional", vector_to_pairs(&hs.functional.coords)))
}

fn pw_entry(h: &FiniteHopfStar, seed: u64) -> Result<Entry> {
    let pw = peter_weyl(h.coalgebra(), seed)?;
    let total: usize = pw.sizes().iter().map(|n| n * n).sum();
    Ok(Entry::new("peter_weyl")
        .residual("comultiplication", pw.comult_residual(h.coalgebra()), h.tol() * 10.0)
        .require(total == h.dim())
        .detail("blocks", pw.sizes())
        .detail("sum_of_squares", total))
}

/// Parse `label`, `c*label` terms joined by `+`.
fn parse_element(h: &FiniteHopfStar, text: &str) -> Result<Vector> {
    let mut v = Vector::zeros(h.dim());
    for term in text.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (coef, label) = match term.split_once('*') {
            Some((c, l)) => {
                let c: f64 = c.trim().parse().map_err(|_| {
                    Error::InvalidInput(format!("--gen: bad coefficient in `{term}`"))
                })?;
                (c, l.trim())
            }
            None => (1.0, term),
        };
        let i = h.labels().iter().position(|l| l == label).ok_or_else(|| {
            Error::InvalidInput(format!(
                "--gen: unknown basis label `{label}`; labels are {}",
                h.labels().join(", ")
            ))
        })?;
        v[i] += c64(coef, 0.0);
    }
    Ok(v)
}

fn close(h: &FiniteHopfStar, gens: &[String], save: Option<&str>, input: &Path) -> Result<Entry> {
    let vecs: Vec<Vector> = gens
        .iter()
        .map(|g| parse_element(h, g))
        .collect::<Result<_>>()?;
    let a = coideal_closure(&vecs, h)?;
    let mut e = coideal_entry(&a.space, h)
        .detail("generators", gens)
        .detail("dim", a.dim());
    if let Some(name) = save {
        let hopf_path = input.join("hopf.json");
        let text = std::fs::read_to_string(&hopf_path).map_err(|source| Error::Io {
            path: hopf_path.display().to_string(),
            source,
        })?;
        let file = CoidealFile {
            parent: sha256_hex(text.as_bytes()),
            name: name.to_string(),
            basis: a.space.vectors().iter().map(vector_to_pairs).collect(),
        };
        let dir = input.join("coideals");
        let path = dir.join(format!("{name}.json"));
        std::fs::create_dir_all(&dir)
            .and_then(|_| std::fs::write(&path, serde_json::to_string_pretty(&file).expect("serializes")))
            .map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
        e = e.detail("saved", path.display().to_string());
    }
    Ok(e)
}

fn fourier_entry(a: &CoidealSubalgebra) -> Result<Entry> {
    let h = &a.parent;
    let e = build_expectation(a)?;
    let f1 = fourier(h.unit(), &e)?;
    let unit_res = max_abs_vec(&(&f1.functional - &e.h_c.coords));
    let fm = fourier_matrix(&e)?;
    let r = if fm.nrows() == 0 { 0 } else { rank(&fm, h.tol()) };
    let th = theta(&e.quotient, &h.antipode_square())?;
    let pos = th.block_positivity(h.tol());
    let min = pos
        .iter()
        .map(|p| p.min_eigenvalue)
        .fold(f64::INFINITY, f64::min);
    Ok(Entry::new("fourier")
        .residual("fourier_of_unit_is_h_c", unit_res, h.tol())
        .require(pos.iter().all(|p| p.positive))
        .value("theta_min_eigenvalue", min)
        .detail("theta_blocks_psd", pos.iter().all(|p| p.positive))
        .detail("fourier_rank", r)
        .detail("dim_C", e.quotient.dim()))
}

fn cotensor_entry(q: &QuotientCoalgebra) -> Result<Entry> {
    let h = &q.parent;
    let (eq, _) = cotensor(&trivial_quotient_comodule(q), q)?;
    let inv = invariants(q)?;
    let cmp = eq.compare(&inv)?;
    let (reg, comod) = cotensor(&regular_quotient_comodule(q), q)?;
    let laws = comod.verify(h.coalgebra())?;
    let mut e = Entry::new("cotensor")
        .residual("trivial_equals_invariants", cmp.residual, h.tol())
        .require(cmp.equal && reg.dim() == h.dim())
        .detail("dim_trivial_cotensor", eq.dim())
        .detail("dim_invariants", inv.dim())
        .detail("dim_regular_cotensor", reg.dim())
        .detail("dim_H", h.dim());
    absorb(&mut e, laws, "regular_comodule");
    Ok(e)
}

/// `M ∈ {A, H, V⊗A for every simple V}`.
pub(crate) fn adjunction_battery(a: &CoidealSubalgebra) -> Result<Vec<Entry>> {
    let h = &a.parent;
    let q = quotient_coalgebra(a)?;
    let mut out = vec![
        adjunction_check(a, &q, &hopf_module_regular(a))?.detail("module", "A"),
        adjunction_check(a, &q, &hopf_module_free(a))?.detail("module", "H"),
    ];
    let pw = peter_weyl(h.coalgebra(), 0)?;
    for (k, v) in simple_comodules(&pw).iter().enumerate() {
        let m = hopf_module_tensor(a, v)?;
        out.push(
            adjunction_check(a, &q, &m)?
                .detail("module", format!("V{k}(dim {}) tensor A", v.dim)),
        );
    }
    Ok(out)
}

/// `0 → A`, `A⁺ → A`, `A → A⊕A`, five seeded random submodules of `H`,
/// and `dim H⊗_A(A/A⁺) = dim C`.
pub(crate) fn flatness_battery(a: &CoidealSubalgebra, seed: u64) -> Result<Vec<Entry>> {
    let h = &a.parent;
    let tol = h.tol();
    let na = a.dim();
    let reg = LeftModule::regular(a);
    let mut out = Vec::new();

    let e = flatness_spotcheck(a, &LeftModule::zero(a), &reg, &Matrix::zeros(na, 0))?;
    out.push(e.detail("case", "0 -> A"));

    // A⁺ in coordinates of A
    let plus_space = Subspace::from_columns(&(a.space.basis().adjoint() * a.plus.basis()), tol);
    let plus = reg.restrict(&plus_space);
    let e = flatness_spotcheck(a, &plus, &reg, plus_space.basis())?;
    out.push(e.detail("case", "A+ -> A"));

    let double = reg.direct_sum(&reg);
    let mut diag = Matrix::zeros(2 * na, na);
    for i in 0..na {
        diag[(i, i)] = c64(1.0, 0.0);
        diag[(na + i, i)] = c64(1.0, 0.0);
    }
    let e = flatness_spotcheck(a, &reg, &double, &diag)?;
    out.push(e.detail("case", "A -> A+A"));

    let whole = LeftModule::parent(a);
    for k in 0..5 {
        let s = seed.wrapping_add(k);
        let (sub, basis) = random_submodule(a, 3, s)?;
        let e = flatness_spotcheck(a, &sub, &whole, &basis)?;
        out.push(
            e.detail("case", "random submodule -> H")
                .detail("seed", s)
                .detail("dim_sub", sub.dim),
        );
    }

    let q = quotient_coalgebra(a)?;
    let dim = relative_tensor_dim(a, &LeftModule::trivial(a));
    out.push(
        Entry::new("relative_tensor")
            .require(dim == q.dim())
            .detail("dim_H_tensor_trivial", dim)
            .detail("dim_C", q.dim()),
    );
    Ok(out)
}
